#ifndef SIEGEL_DEGENERATION_HPP
#define SIEGEL_DEGENERATION_HPP

#include <cmath>
#include <vector>

#include "siegel/curve.hpp"
#include "siegel/periods.hpp"

namespace siegel {

enum class DegenerationKind { Separating, NonSeparating };
enum class NeckClassification { Finite, Divergent };

// Classification thresholds. Finite: the distance to the first point gains
// less than 0.05 over the final epsilon decade. Divergent: distance strictly
// increasing and the max Im diagonal grows by at least 0.3 per decade — the
// log-divergence signature (the distance itself only grows like log log(1/eps)
// for a pinching loop, so a fixed per-decade distance threshold cannot
// witness divergence).
inline constexpr double kFiniteRatePerDecade = 0.05;
inline constexpr double kDivergentImRatePerDecade = 0.3;

// Genus-2 families degenerating by branch-point collision. Separating:
// two genus-1 clusters pulled apart by 1/epsilon, so the connecting neck
// pinches a homologically trivial loop. NonSeparating: one adjacent pair
// collides with gap epsilon, pinching a homologically nontrivial loop.
class DegenerationFamily {
public:
    DegenerationFamily(DegenerationKind kind, std::vector<double> epsilons)
        : kind_(kind), epsilons_(std::move(epsilons)) {
        if (epsilons_.empty())
            throw invalid_family("DegenerationFamily: empty epsilon sequence");
        for (size_t i = 0; i < epsilons_.size(); ++i) {
            if (!(epsilons_[i] > 1e-12))
                throw invalid_family("DegenerationFamily: epsilon too small");
            if (i > 0 && !(epsilons_[i] < epsilons_[i - 1]))
                throw invalid_family("DegenerationFamily: epsilons must decrease strictly");
        }
    }

    DegenerationKind kind() const { return kind_; }
    const std::vector<double>& epsilons() const { return epsilons_; }

    HyperellipticCurve curve_at(double eps) const {
        if (kind_ == DegenerationKind::Separating) {
            // clusters around -2/eps and +2/eps, shape [-3,-2,-1,1,2,3] at eps=1
            const double s = 2.0 / eps;
            return HyperellipticCurve({-s - 1, -s, -s + 1, s - 1, s, s + 1});
        }
        return HyperellipticCurve({-1, 0, 1, 2, 3 - eps, 3 + eps});
    }

    // The two genus-1 cluster curves of the separating layout (odd models);
    // their block-diagonal Jacobian is the separating limit point.
    std::vector<HyperellipticCurve> separating_components() const {
        if (kind_ != DegenerationKind::Separating)
            throw invalid_family("separating_components: family is non-separating");
        return {HyperellipticCurve::from_odd_model({-1, 0, 1}),
                HyperellipticCurve::from_odd_model({-1, 0, 1})};
    }

    // The genus-1 curve left when the colliding pair is pinched away.
    HyperellipticCurve nonseparating_core() const {
        if (kind_ != DegenerationKind::NonSeparating)
            throw invalid_family("nonseparating_core: family is separating");
        return HyperellipticCurve({-1, 0, 1, 2});
    }

private:
    DegenerationKind kind_;
    std::vector<double> epsilons_;
};

inline DegenerationFamily make_family(DegenerationKind kind,
                                      std::vector<double> epsilons) {
    return DegenerationFamily(kind, std::move(epsilons));
}

struct DegenerationReport {
    std::vector<SiegelPoint> reduced_points;
    std::vector<double> offdiag_norms;      // |Z_12| of the reduced point
    std::vector<double> im_diag_max;        // max_i (Im Z)_ii
    std::vector<double> distance_to_first;
    NeckClassification classification = NeckClassification::Finite;
};

// Track the reduced period point along the family and classify the
// distance trend: bounded for separating necks, log-divergent otherwise.
inline DegenerationReport neck_limit_probe(const DegenerationFamily& family) {
    DegenerationReport rep;
    for (double eps : family.epsilons()) {
        const SiegelPoint Z = period_matrix(family.curve_at(eps));
        const SiegelReductionResult red = siegel_reduce(Z);
        const CMat Zr = red.reduced.Z();
        rep.reduced_points.push_back(red.reduced);
        rep.offdiag_norms.push_back(std::abs(Zr(0, 1)));
        rep.im_diag_max.push_back(red.reduced.Y().diagonal().maxCoeff());
        rep.distance_to_first.push_back(
            siegel_distance(red.reduced, rep.reduced_points.front()));
    }
    const size_t m = rep.distance_to_first.size();
    if (m < 2)
        throw inconclusive("neck_limit_probe: need at least two epsilon values");
    const auto& eps = family.epsilons();
    const double decades = std::log10(eps[m - 2] / eps[m - 1]);
    const double dist_rate =
        (rep.distance_to_first[m - 1] - rep.distance_to_first[m - 2]) / decades;
    const double im_rate =
        (rep.im_diag_max[m - 1] - rep.im_diag_max[m - 2]) / decades;
    bool monotone_up = true;
    for (size_t i = 1; i < m; ++i)
        monotone_up = monotone_up &&
                      rep.distance_to_first[i] > rep.distance_to_first[i - 1] + 1e-12;
    if (dist_rate < kFiniteRatePerDecade)
        rep.classification = NeckClassification::Finite;
    else if (im_rate > kDivergentImRatePerDecade && monotone_up)
        rep.classification = NeckClassification::Divergent;
    else
        throw inconclusive("neck_limit_probe: distance trend between thresholds");
    return rep;
}

// Boundary strata of the genus-g moduli completion: multisets {g_1..g_k}
// with g_i >= 1 and sum < g, or sum = g with k >= 2, plus the cusp {}.
inline std::vector<StratumDescriptor> enumerate_boundary_strata(
    int g, bool include_interior) {
    if (g < 1) throw unsupported("enumerate_boundary_strata: g >= 1 required");
    std::vector<StratumDescriptor> out;
    if (include_interior) out.push_back(StratumDescriptor::interior(g));
    std::vector<int> parts;
    // partitions of s in non-increasing order, for s = 1..g
    auto emit = [&](int s) {
        std::vector<std::vector<int>> result;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int rem, int maxpart) -> void {
            if (rem == 0) {
                result.push_back(cur);
                return;
            }
            for (int p = std::min(rem, maxpart); p >= 1; --p) {
                cur.push_back(p);
                self(self, rem - p, p);
                cur.pop_back();
            }
        };
        rec(rec, s, s);
        return result;
    };
    for (int s = 1; s <= g; ++s)
        for (auto& p : emit(s)) {
            if (s == g && p.size() < 2) continue;  // sum = g needs k >= 2
            out.push_back(StratumDescriptor::boundary(p));
        }
    out.push_back(StratumDescriptor::boundary({}));  // the cusp
    return out;
}

} // namespace siegel

#endif
