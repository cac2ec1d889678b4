#ifndef SIEGEL_ERRORS_HPP
#define SIEGEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace siegel {

// Domain errors carry a stable kind string so the CLI can report them
// structurally. Everything derives from std::runtime_error.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }
private:
    std::string kind_;
};

#define SIEGEL_DEFINE_ERROR(Name, Kind)                                \
    class Name : public domain_error {                                 \
    public:                                                            \
        explicit Name(const std::string& msg)                          \
            : domain_error(Kind, msg) {}                               \
    }

SIEGEL_DEFINE_ERROR(not_positive_definite, "NotPositiveDefinite");
SIEGEL_DEFINE_ERROR(order_mismatch, "OrderMismatch");
SIEGEL_DEFINE_ERROR(not_symplectic, "NotSymplectic");
SIEGEL_DEFINE_ERROR(singular_denominator, "SingularDenominator");
SIEGEL_DEFINE_ERROR(genus_mismatch, "GenusMismatch");
SIEGEL_DEFINE_ERROR(not_symmetric, "NotSymmetric");
SIEGEL_DEFINE_ERROR(internal_consistency, "InternalConsistency");
SIEGEL_DEFINE_ERROR(iteration_limit_exceeded, "IterationLimitExceeded");
SIEGEL_DEFINE_ERROR(unsupported, "Unsupported");
SIEGEL_DEFINE_ERROR(not_standard_position, "NotStandardPosition");
SIEGEL_DEFINE_ERROR(riemann_relation_violation, "RiemannRelationViolation");
SIEGEL_DEFINE_ERROR(quadrature_non_convergence, "QuadratureNonConvergence");
SIEGEL_DEFINE_ERROR(query_too_close_to_branch_point, "QueryTooCloseToBranchPoint");
SIEGEL_DEFINE_ERROR(invalid_curve, "InvalidCurve");
SIEGEL_DEFINE_ERROR(invalid_family, "InvalidFamily");
SIEGEL_DEFINE_ERROR(invalid_config, "InvalidConfig");
SIEGEL_DEFINE_ERROR(inconclusive, "Inconclusive");

#undef SIEGEL_DEFINE_ERROR

} // namespace siegel

#endif
