#ifndef SIEGEL_TESTS_HELPERS_HPP
#define SIEGEL_TESTS_HELPERS_HPP

#include <cmath>
#include <vector>

#include "siegel/rng.hpp"
#include "siegel/siegel.hpp"

namespace th {

using siegel::CMat;
using siegel::complexd;
using siegel::Mat;
using siegel::SiegelPoint;
using siegel::SymplecticElement;
using siegel::Vec;
using Rng = siegel::rng::Xoshiro256;

inline Mat random_sym(int g, Rng& rng, double scale = 1.0) {
    Mat S(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            S(i, j) = rng.uniform(-scale, scale);
            S(j, i) = S(i, j);
        }
    return S;
}

inline Mat random_pos_def(int g, Rng& rng, double scale = 1.0) {
    Mat A(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) A(i, j) = rng.uniform(-scale, scale);
    return A.transpose() * A + 0.2 * scale * scale * Mat::Identity(g, g);
}

inline SiegelPoint random_point(int g, Rng& rng, double scale = 1.0) {
    return SiegelPoint(random_sym(g, rng, scale), random_pos_def(g, rng, scale));
}

inline Mat random_int_sym(int g, Rng& rng, int range = 2) {
    Mat S(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            S(i, j) = std::floor(rng.uniform(0, 2 * range + 1)) - range;
            S(j, i) = S(i, j);
        }
    return S;
}

// Unimodular integer matrix built from elementary row operations.
inline Mat random_unimodular(int g, Rng& rng, int ops = 4) {
    Mat U = Mat::Identity(g, g);
    for (int k = 0; k < ops; ++k) {
        const int i = static_cast<int>(rng.uniform(0, g));
        int j = static_cast<int>(rng.uniform(0, g));
        if (g > 1) {
            while (j == i) j = static_cast<int>(rng.uniform(0, g));
            const double c = std::floor(rng.uniform(0, 5)) - 2;
            U.col(j) += c * U.col(i);
        } else {
            U(0, 0) = (rng.uniform() < 0.5) ? 1.0 : -1.0;
        }
    }
    return U;
}

// Random word in the integral generators: inversion J, unit translations,
// unimodular basis changes.
inline SymplecticElement random_integral_word(int g, Rng& rng, int len = 6) {
    SymplecticElement M = SymplecticElement::identity(g);
    for (int k = 0; k < len; ++k) {
        const double pick = rng.uniform();
        if (pick < 0.34)
            M = SymplecticElement::inversion(g) * M;
        else if (pick < 0.67)
            M = SymplecticElement::translation(random_int_sym(g, rng)) * M;
        else
            M = SymplecticElement::basis_change(random_unimodular(g, rng)) * M;
    }
    return M;
}

inline double hyperbolic_distance(complexd z1, complexd z2) {
    const double t = std::norm(z1 - z2) / (2.0 * z1.imag() * z2.imag());
    return std::acosh(1.0 + t);
}

// Distance of a reduced point from the nearest fundamental-domain wall:
// translation walls, Minkowski walls, and dilation walls.
inline double wall_margin(const SiegelPoint& Z) {
    const int g = Z.genus();
    double m = 1e300;
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) m = std::min(m, 0.5 - std::abs(Z.X()(i, j)));
    const Mat& Y = Z.Y();
    for (int i = 0; i + 1 < g; ++i) {
        m = std::min(m, Y(i + 1, i + 1) - Y(i, i));
        m = std::min(m, Y(i, i + 1));
    }
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) m = std::min(m, Y(i, i) - 2 * std::abs(Y(i, j)));
    const CMat Zc = Z.Z();
    for (const auto& M : siegel::detail::dilation_set(g))
        m = std::min(m, siegel::detail::abs_det_denominator(M, Zc) - 1.0);
    return m;
}

// Genus-1 points equal modulo the boundary identifications x -> x +- 1 of
// the fundamental domain (relevant only on its walls).
inline bool tau_equal_mod_wall(complexd a, complexd b, double tol) {
    return std::abs(a - b) <= tol || std::abs(a + 1.0 - b) <= tol ||
           std::abs(a - 1.0 - b) <= tol;
}

} // namespace th

#endif
