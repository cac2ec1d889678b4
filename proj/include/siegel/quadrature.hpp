#ifndef SIEGEL_QUADRATURE_HPP
#define SIEGEL_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {
namespace quad {

// Gauss-Chebyshev rule for integrals with 1/sqrt endpoint singularities:
//   int_a^b f(x) / sqrt((x - a)(b - x)) dx  ~  (pi/n) sum f(x_k).
template <class F>
auto chebyshev(F&& f, double a, double b, int n) {
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    using R = decltype(f(mid));
    R acc{};
    for (int k = 1; k <= n; ++k) {
        const double th = (2.0 * k - 1.0) * M_PI / (2.0 * n);
        acc += f(mid + rad * std::cos(th));
    }
    return acc * (M_PI / n);
}

// Node-doubling wrapper; relative tolerance against the finer estimate.
template <class F>
auto chebyshev_adaptive(F&& f, double a, double b, double rel_tol,
                        int n0 = 32, int n_max = (1 << 21)) {
    auto coarse = chebyshev(f, a, b, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        auto fine = chebyshev(f, a, b, n);
        const double scale = std::max(1.0, std::abs(fine));
        if (std::abs(fine - coarse) <= rel_tol * scale) return fine;
        coarse = fine;
    }
    throw quadrature_non_convergence("chebyshev_adaptive: node cap reached");
}

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes by Newton iteration on P_n; cached per order.
inline const GaussLegendreRule& gauss_legendre(int n) {
    thread_local std::map<int, GaussLegendreRule> cache;
    auto& slot = cache[n];
    if (!slot.nodes.empty()) return slot;
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1);
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    slot = std::move(r);
    return slot;
}

template <class F>
auto legendre(F&& f, double a, double b, int n) {
    const auto& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    using R = decltype(f(mid));
    R acc{};
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + rad * r.nodes[i]);
    return acc * rad;
}

template <class F>
auto legendre_adaptive(F&& f, double a, double b, double rel_tol,
                       int n0 = 16, int n_max = (1 << 16)) {
    auto coarse = legendre(f, a, b, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        auto fine = legendre(f, a, b, n);
        const double scale = std::max(1.0, std::abs(fine));
        if (std::abs(fine - coarse) <= rel_tol * scale) return fine;
        coarse = fine;
    }
    throw quadrature_non_convergence("legendre_adaptive: node cap reached");
}

// C-infinity cutoff: 1 on [0, lo], 0 on [hi, inf).
inline double smooth_cutoff(double s, double lo = 0.3, double hi = 0.9) {
    if (s <= lo) return 1.0;
    if (s >= hi) return 0.0;
    const double t = (hi - s) / (hi - lo);
    auto sig = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
    return sig(t) / (sig(t) + sig(1 - t));
}

} // namespace quad
} // namespace siegel

#endif
