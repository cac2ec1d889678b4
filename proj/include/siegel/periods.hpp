#ifndef SIEGEL_PERIODS_HPP
#define SIEGEL_PERIODS_HPP

#include <cmath>
#include <vector>

#include "siegel/core.hpp"
#include "siegel/curve.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/reduction.hpp"
#include "siegel/universal.hpp"

namespace siegel {

inline constexpr double kPeriodQuadTol = 1e-11;  // per elementary integral
inline constexpr double kPeriodAcceptTol = 1e-8; // node-doubling change on Z
inline constexpr double kRiemannSymTol = 1e-8;

namespace detail {

struct GapIntegrals {
    // raw integrals int_gap x^k / |y| dx at the accepted and the previous
    // (half) node count
    std::vector<double> fine, coarse;
};

// Elementary integrals int_gap x^k / |y| dx, k < g, over gap j =
// (bp[j], bp[j+1]); the endpoint pair is absorbed by the Chebyshev rule, the
// remaining factors stay under a sqrt. All powers share one node sweep.
// Convergence is judged against the natural magnitude |I_0| max(1,|x|)^k per
// power, so tiny integrals (distant gaps, odd-symmetry cancellation) still
// meet a scale-appropriate tolerance.
inline GapIntegrals gap_integrals(const std::vector<double>& bp, int j, int g) {
    const double a = bp[j], b = bp[j + 1];
    auto eval = [&](int n) {
        std::vector<double> acc(g, 0.0);
        const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
        for (int t = 1; t <= n; ++t) {
            const double th = (2.0 * t - 1.0) * M_PI / (2.0 * n);
            const double x = mid + rad * std::cos(th);
            double rest = 1.0;
            for (size_t i = 0; i < bp.size(); ++i) {
                if (static_cast<int>(i) == j || static_cast<int>(i) == j + 1) continue;
                rest *= std::abs(x - bp[i]);
            }
            double m = 1.0 / std::sqrt(rest);
            for (int k = 0; k < g; ++k) {
                acc[k] += m;
                m *= x;
            }
        }
        for (double& v : acc) v *= M_PI / n;
        return acc;
    };
    const double xm = std::max({1.0, std::abs(a), std::abs(b)});
    GapIntegrals out;
    out.coarse = eval(32);
    for (int n = 64; n <= (1 << 21); n *= 2) {
        out.fine = eval(n);
        bool ok = true;
        double scale = std::max(std::abs(out.fine[0]), 1e-300);
        for (int k = 0; k < g; ++k) {
            const double sk = std::max(std::abs(out.fine[k]), scale);
            ok = ok && std::abs(out.fine[k] - out.coarse[k]) <= kPeriodQuadTol * sk;
            scale *= xm;
        }
        if (ok) return out;
        out.coarse = out.fine;
    }
    throw quadrature_non_convergence("gap_integrals: node cap reached");
}

// Assemble the normalized period matrix for a fixed homology convention:
// a_j encircles the cut (b_{2j-1}, b_{2j}); the chain loops c_j encircle the
// gaps between consecutive cuts and the b-cycles are the nested sums
// b_j = c_j + ... + c_g. Phases come from continuing y over the real axis:
// on the gap with m branch points to the right, y = i^m |y| just above it.
inline void assemble_Z(const std::vector<double>& bp, CMat& Z_fine, CMat& Z_coarse) {
    const int g = static_cast<int>(bp.size()) / 2 - 1;
    CMat A_f(g, g), A_c(g, g), C_f(g, g), C_c(g, g);
    const complexd I(0, 1);
    auto phase = [&](int gap) {
        const int m = (2 * g + 1 - gap) % 4;  // points strictly right of the gap
        // 1 / i^m
        static const complexd inv[4] = {complexd(1, 0), complexd(0, -1),
                                        complexd(-1, 0), complexd(0, 1)};
        return inv[((m % 4) + 4) % 4];
    };
    for (int j = 0; j < g; ++j) {
        const int agap = 2 * j;       // cut j+1
        const int cgap = 2 * j + 1;   // gap between cut j+1 and cut j+2
        const GapIntegrals ai = gap_integrals(bp, agap, g);
        const GapIntegrals ci = gap_integrals(bp, cgap, g);
        for (int k = 0; k < g; ++k) {
            A_f(k, j) = 2.0 * phase(agap) * ai.fine[k];
            A_c(k, j) = 2.0 * phase(agap) * ai.coarse[k];
            C_f(k, j) = 2.0 * phase(cgap) * ci.fine[k];
            C_c(k, j) = 2.0 * phase(cgap) * ci.coarse[k];
        }
    }
    CMat B_f = CMat::Zero(g, g), B_c = CMat::Zero(g, g);
    for (int j = 0; j < g; ++j)
        for (int m = j; m < g; ++m) {
            B_f.col(j) += C_f.col(m);
            B_c.col(j) += C_c.col(m);
        }
    Z_fine = A_f.fullPivLu().solve(B_f);
    Z_coarse = A_c.fullPivLu().solve(B_c);
}

inline CMat periods_checked(const std::vector<double>& bp) {
    CMat Zf, Zc;
    assemble_Z(bp, Zf, Zc);
    const double scale = std::max(1.0, Zf.cwiseAbs().maxCoeff());
    if ((Zf - Zc).cwiseAbs().maxCoeff() > kPeriodAcceptTol * scale)
        throw quadrature_non_convergence("period_matrix: node doubling changed Z");
    return Zf;
}

struct RawPeriods {
    CMat a_periods, b_periods;
};

inline RawPeriods raw_periods(const std::vector<double>& bp) {
    const int g = static_cast<int>(bp.size()) / 2 - 1;
    CMat A(g, g), C(g, g);
    auto phase = [&](int gap) {
        const int m = (2 * g + 1 - gap) % 4;
        static const complexd inv[4] = {complexd(1, 0), complexd(0, -1),
                                        complexd(-1, 0), complexd(0, 1)};
        return inv[((m % 4) + 4) % 4];
    };
    for (int j = 0; j < g; ++j) {
        const GapIntegrals ai = gap_integrals(bp, 2 * j, g);
        const GapIntegrals ci = gap_integrals(bp, 2 * j + 1, g);
        for (int k = 0; k < g; ++k) {
            A(k, j) = 2.0 * phase(2 * j) * ai.fine[k];
            C(k, j) = 2.0 * phase(2 * j + 1) * ci.fine[k];
        }
    }
    CMat B = CMat::Zero(g, g);
    for (int j = 0; j < g; ++j)
        for (int m = j; m < g; ++m) B.col(j) += C.col(m);
    return RawPeriods{A, B};
}

} // namespace detail

// Period matrix of the canonical homology basis, Z = A^-1 B, validated
// against the Riemann relations. Sentinel (odd-model) curves are Richardson
// extrapolated in the inverse sentinel position.
inline SiegelPoint period_matrix(const HyperellipticCurve& curve) {
    CMat Z;
    if (!curve.has_sentinel()) {
        Z = detail::periods_checked(curve.branch_points());
    } else {
        const CMat Z1 = detail::periods_checked(curve.branch_points());
        const CMat Z2 =
            detail::periods_checked(curve.with_sentinel_scaled(2).branch_points());
        if ((Z2 - Z1).cwiseAbs().maxCoeff() < kPeriodAcceptTol) {
            Z = Z2;
        } else {
            const CMat Z4 =
                detail::periods_checked(curve.with_sentinel_scaled(4).branch_points());
            const CMat E12 = 2 * Z2 - Z1;
            const CMat E24 = 2 * Z4 - Z2;
            if ((E24 - E12).cwiseAbs().maxCoeff() > kPeriodAcceptTol)
                throw quadrature_non_convergence(
                    "period_matrix: sentinel extrapolation did not settle");
            Z = E24;
        }
    }
    const double asym = (Z - Z.transpose()).cwiseAbs().maxCoeff();
    if (asym > kRiemannSymTol)
        throw riemann_relation_violation("period_matrix: Z asymmetry " +
                                         std::to_string(asym));
    Z = 0.5 * (Z + Z.transpose().eval());
    if (!is_positive_definite(Z.imag()))
        throw riemann_relation_violation("period_matrix: Im Z not positive definite");
    return SiegelPoint(Z.real(), Z.imag());
}

// Genus-1 periods for a cubic y^2 = (x - e1)(x - e2)(x - e3) with arbitrary
// complex roots (the real-branch-point machinery cannot reach curves whose
// roots leave the real axis, e.g. one real root plus a conjugate pair).
// Periods are segment integrals between roots; the endpoint pair is absorbed
// by the cosine substitution and the third factor's square root is continued
// along the segment. The result is normalized to Im tau > 0; for real
// coefficient cubics the reduced point lands on the mirror-fixed locus, so
// the remaining mirror ambiguity is a boundary identification only.
inline SiegelPoint elliptic_period_from_cubic_roots(complexd e1, complexd e2,
                                                    complexd e3) {
    auto segment = [](complexd u, complexd v, complexd other) {
        const complexd mid = 0.5 * (u + v), rad = 0.5 * (v - u);
        auto eval = [&](int n) {
            complexd acc(0, 0);
            complexd prev(0, 0);
            bool have_prev = false;
            for (int k = 1; k <= n; ++k) {
                const double th = (2.0 * k - 1.0) * M_PI / (2.0 * n);
                const complexd x = mid - rad * std::cos(th);
                complexd s = std::sqrt(x - other);
                if (have_prev && (std::norm(s - prev) > std::norm(s + prev))) s = -s;
                prev = s;
                have_prev = true;
                acc += 1.0 / s;
            }
            return acc * (M_PI / static_cast<double>(n));
        };
        complexd coarse = eval(64);
        for (int n = 128; n <= (1 << 18); n *= 2) {
            const complexd fine = eval(n);
            if (std::abs(fine - coarse) <= 1e-12 * std::max(1.0, std::abs(fine)))
                return fine;
            coarse = fine;
        }
        throw quadrature_non_convergence("elliptic_period_from_cubic_roots");
    };
    const complexd A = 2.0 * segment(e1, e2, e3);
    const complexd B = 2.0 * segment(e2, e3, e1);
    complexd tau = B / A;
    if (tau.imag() < 0) tau = -tau;
    if (!(tau.imag() > 0))
        throw riemann_relation_violation("elliptic_period_from_cubic_roots: Im tau <= 0");
    return SiegelPoint::from_tau(tau);
}

// Torelli map: curve -> canonical point of the universal space.
inline UniversalPoint torelli_embed(const HyperellipticCurve& curve) {
    const SiegelPoint Z = period_matrix(curve);
    const SiegelReductionResult red = siegel_reduce(Z);
    return stabilize(red.reduced);
}

struct TorelliProduct {
    SiegelPoint point;             // block-diagonal assembly of reduced periods
    StratumDescriptor descriptor;  // Boundary({g_i}) or Interior({sum g_i})
};

// Disjoint union of curves: block-diagonal Jacobian, presented either as a
// boundary datum or as an interior product point.
inline TorelliProduct torelli_embed(const std::vector<HyperellipticCurve>& curves,
                                    bool as_boundary) {
    if (curves.empty())
        throw invalid_curve("torelli_embed: empty curve list");
    std::vector<SiegelPoint> parts;
    std::vector<int> genera;
    int total = 0;
    for (const auto& c : curves) {
        const SiegelReductionResult red = siegel_reduce(period_matrix(c));
        parts.push_back(red.reduced);
        genera.push_back(c.genus());
        total += c.genus();
    }
    Mat X = Mat::Zero(total, total), Y = Mat::Zero(total, total);
    int off = 0;
    for (const auto& p : parts) {
        const int g = p.genus();
        X.block(off, off, g, g) = p.X();
        Y.block(off, off, g, g) = p.Y();
        off += g;
    }
    StratumDescriptor d = as_boundary ? StratumDescriptor::boundary(genera)
                                      : StratumDescriptor::interior(total);
    return TorelliProduct{SiegelPoint(X, Y), d};
}

} // namespace siegel

#endif
