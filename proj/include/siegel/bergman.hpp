#ifndef SIEGEL_BERGMAN_HPP
#define SIEGEL_BERGMAN_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "siegel/core.hpp"
#include "siegel/curve.hpp"
#include "siegel/periods.hpp"
#include "siegel/quadrature.hpp"

namespace siegel {

inline constexpr double kBranchPointClearance = 1e-6;

struct BergmanReport {
    double density_value = 0;  // rho_B at the query point, x-chart
    CMat gram_matrix;          // Gram of the raw basis x^{k-1} dx / y
};

namespace detail {

inline double abs_y_squared(complexd x, const std::vector<double>& bp) {
    double p = 1.0;
    for (double b : bp) p *= std::abs(x - b);
    return p;
}

// Bergman kernel in the x-chart: v^H G^-1 v with v_k = x^k / y. The common
// phase of y drops out, so |y| suffices.
class BergmanKernel {
public:
    explicit BergmanKernel(const HyperellipticCurve& curve)
        : bp_(curve.branch_points()), g_(curve.genus()) {
        const detail::RawPeriods P = detail::raw_periods(bp_);
        a_periods_ = P.a_periods;
        const complexd I(0, 1);
        gram_ = 0.5 * I *
                (P.a_periods * P.b_periods.adjoint() -
                 P.b_periods * P.a_periods.adjoint());
        gram_ = 0.5 * (gram_ + gram_.adjoint().eval());
        if (!is_positive_definite_hermitian(gram_))
            throw internal_consistency("BergmanKernel: Gram matrix not positive definite");
        gram_inv_ = gram_.inverse();
    }

    static bool is_positive_definite_hermitian(const CMat& H) {
        Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
        return lo > 1e-12 * hi;
    }

    double density(complexd x) const {
        Eigen::VectorXcd p(g_);
        complexd m(1, 0);
        for (int k = 0; k < g_; ++k) {
            p(k) = m;
            m *= x;
        }
        const double num = std::real(p.dot(gram_inv_ * p));  // p^H Ginv p
        return num / abs_y_squared(x, bp_);
    }

    const CMat& gram() const { return gram_; }
    const CMat& a_periods() const { return a_periods_; }
    int genus() const { return g_; }
    const std::vector<double>& branch_points() const { return bp_; }

private:
    std::vector<double> bp_;
    int g_;
    CMat gram_, gram_inv_, a_periods_;
};

// Integral over the complex plane of a function with integrable 1/|x - b|
// singularities at the branch points and O(|x|^-4) decay. Smooth cutoffs
// split the plane into polar patches around each branch point plus a far
// field in radially mapped polar coordinates.
template <class F>
double integrate_plane(F&& f, const std::vector<double>& bp, double rel_tol = 1e-8) {
    const int n = static_cast<int>(bp.size());
    const double spread = bp.back() - bp.front();
    std::vector<double> radius(n);
    for (int i = 0; i < n; ++i) {
        double r = spread;
        if (i > 0) r = std::min(r, bp[i] - bp[i - 1]);
        if (i + 1 < n) r = std::min(r, bp[i + 1] - bp[i]);
        radius[i] = 0.45 * r;
    }
    auto cutoffs = [&](complexd x) {
        double s = 0;
        for (int i = 0; i < n; ++i)
            s += quad::smooth_cutoff(std::abs(x - bp[i]) / radius[i]);
        return s;  // supports are disjoint, so s <= 1
    };

    auto polar_patch = [&](int i, int nr, int nth) {
        // int_0^R int_0^2pi f(b + r e^{i th}) eta(r/R) r dth dr
        const double R = radius[i];
        const auto& rule = quad::gauss_legendre(nr);
        double total = 0;
        for (int a = 0; a < nr; ++a) {
            const double r = 0.5 * R * (1 + rule.nodes[a]);
            const double w = 0.5 * R * rule.weights[a];
            const double eta = quad::smooth_cutoff(r / R);
            if (eta == 0) continue;
            double ang = 0;
            for (int t = 0; t < nth; ++t) {
                const double th = 2 * M_PI * (t + 0.5) / nth;
                ang += f(bp[i] + std::polar(r, th));
            }
            total += w * eta * r * ang * (2 * M_PI / nth);
        }
        return total;
    };

    const double cx = 0.5 * (bp.front() + bp.back());
    const double R0 = 2.0 * spread;
    auto far_field = [&](int nr, int nth) {
        // r = R0 t / (1 - t), t in (0, 1)
        const auto& rule = quad::gauss_legendre(nr);
        double total = 0;
        for (int a = 0; a < nr; ++a) {
            const double t = 0.5 * (1 + rule.nodes[a]);
            const double wt = 0.5 * rule.weights[a];
            const double r = R0 * t / (1 - t);
            const double jac = R0 / ((1 - t) * (1 - t));
            double ang = 0;
            for (int tt = 0; tt < nth; ++tt) {
                const double th = 2 * M_PI * (tt + 0.5) / nth;
                const complexd x = complexd(cx, 0) + std::polar(r, th);
                const double c = cutoffs(x);
                if (c >= 1.0) continue;
                ang += f(x) * (1.0 - c);
            }
            total += wt * jac * r * ang * (2 * M_PI / nth);
        }
        return total;
    };

    auto evaluate = [&](int nr, int nth) {
        double v = far_field(2 * nr, nth);
        for (int i = 0; i < n; ++i) v += polar_patch(i, nr, nth);
        return v;
    };

    double coarse = evaluate(32, 32);
    for (int m = 2; m <= 64; m *= 2) {
        const double fine = evaluate(32 * m, 32 * m);
        if (std::abs(fine - coarse) <= rel_tol * std::max(1.0, std::abs(fine)))
            return fine;
        coarse = fine;
    }
    throw quadrature_non_convergence("integrate_plane: node cap reached");
}

} // namespace detail

// rho_B at a real query point in the x-chart, plus the raw Gram matrix.
inline BergmanReport bergman_density(const HyperellipticCurve& curve, double x_query) {
    for (double b : curve.branch_points())
        if (std::abs(x_query - b) <= kBranchPointClearance)
            throw query_too_close_to_branch_point(
                "bergman_density: query within 1e-6 of a branch point");
    detail::BergmanKernel K(curve);
    BergmanReport rep;
    rep.gram_matrix = K.gram();
    rep.density_value = K.density(complexd(x_query, 0));
    return rep;
}

// Genus-1 only: rho_B transported to the flat chart z with dz = dx / (a y),
// a the a-period of dx / y. Constant 1 / Im tau for any torus.
inline double bergman_flat_chart_density(const HyperellipticCurve& curve,
                                         double x_query) {
    if (curve.genus() != 1)
        throw unsupported("bergman_flat_chart_density: genus 1 only");
    detail::BergmanKernel K(curve);
    const complexd a = K.a_periods()(0, 0);
    const double rho_x = K.density(complexd(x_query, 0));
    return rho_x * std::norm(a) * detail::abs_y_squared(complexd(x_query, 0),
                                                        curve.branch_points());
}

// Total mass of the Bergman density; equals the genus for exact quadrature.
inline double bergman_total_mass(const HyperellipticCurve& curve,
                                 double rel_tol = 1e-8) {
    detail::BergmanKernel K(curve);
    auto f = [&](complexd x) { return K.density(x); };
    return 2.0 * detail::integrate_plane(f, curve.branch_points(), rel_tol);
}

// Holomorphic quadratic differential; genus 1: c dz^2 in the flat chart,
// genus 2: (c0 + c1 x + c2 x^2) dx^2 / y^2.
struct QuadDifferential {
    int genus = 1;
    std::vector<complexd> coefficients;

    static QuadDifferential torus(complexd c) { return {1, {c}}; }
    static QuadDifferential genus2(complexd c0, complexd c1, complexd c2) {
        return {2, {c0, c1, c2}};
    }
};

// Hermitian product (w1, w2)_B = (i/2) int w1 conj(w2) / rho_B over the
// surface, computed in the x-chart on the double cover.
inline complexd bergman_qd_product(const HyperellipticCurve& curve,
                                   const QuadDifferential& w1,
                                   const QuadDifferential& w2,
                                   double rel_tol = 1e-8) {
    const int g = curve.genus();
    if (g > 2) throw unsupported("bergman_qd_product: genus 1 or 2 only");
    if (w1.genus != g || w2.genus != g)
        throw genus_mismatch("bergman_qd_product: differential genus mismatch");
    if (w1.coefficients.size() != (g == 1 ? 1u : 3u) ||
        w2.coefficients.size() != (g == 1 ? 1u : 3u))
        throw invalid_config("bergman_qd_product: wrong coefficient count");
    detail::BergmanKernel K(curve);
    // x-chart numerators q(x) with w = q(x) dx^2 / y^2
    complexd s1(1, 0), s2(1, 0);
    if (g == 1) {
        const complexd a = K.a_periods()(0, 0);
        s1 = w1.coefficients[0] / (a * a);
        s2 = w2.coefficients[0] / (a * a);
    }
    auto q = [&](const QuadDifferential& w, complexd scale, complexd x) {
        if (g == 1) return scale;
        return w.coefficients[0] + x * (w.coefficients[1] + x * w.coefficients[2]);
    };
    const auto& bp = curve.branch_points();
    auto re_part = [&](complexd x) {
        const double y2 = detail::abs_y_squared(x, bp);
        const complexd val = q(w1, s1, x) * std::conj(q(w2, s2, x)) /
                             (y2 * y2 * K.density(x));
        return val.real();
    };
    auto im_part = [&](complexd x) {
        const double y2 = detail::abs_y_squared(x, bp);
        const complexd val = q(w1, s1, x) * std::conj(q(w2, s2, x)) /
                             (y2 * y2 * K.density(x));
        return val.imag();
    };
    const double re = 2.0 * detail::integrate_plane(re_part, bp, rel_tol);
    double im = 0;
    if (&w1 != &w2) im = 2.0 * detail::integrate_plane(im_part, bp, rel_tol);
    return complexd(re, im);
}

} // namespace siegel

#endif
