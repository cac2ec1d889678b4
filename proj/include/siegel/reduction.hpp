#ifndef SIEGEL_REDUCTION_HPP
#define SIEGEL_REDUCTION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "siegel/core.hpp"

namespace siegel {

inline constexpr double kDomainTol = 1e-9;    // boundary tolerance of the domains
inline constexpr int kSiegelIterationCap = 10000;

// round half to even, so reduction is deterministic on half-integer walls
inline double round_even(double v) {
    const double f = std::floor(v);
    const double frac = v - f;
    if (frac < 0.5) return f;
    if (frac > 0.5) return f + 1;
    return (std::fmod(f, 2.0) == 0.0) ? f : f + 1;
}

struct MinkowskiResult {
    Mat reduced;       // U^T Y U
    Mat U;             // unimodular, integer entries
    int word_length = 0;
    bool approximate = false;  // true for order > 4 (heuristic only)
};

namespace detail {

// Size-reduce column j against column i of the Gram matrix G = U^T Y U,
// updating U. Returns true if a nontrivial step was applied.
inline bool size_reduce_pair(Mat& G, Mat& U, int i, int j) {
    const double t = round_even(G(j, i) / G(i, i));
    if (t == 0.0) return false;
    // v_j <- v_j - t v_i
    U.col(j) -= t * U.col(i);
    const Vec gi = G.col(i);
    G.col(j) -= t * gi;
    G.row(j) -= t * gi.transpose();
    G(j, j) += t * t * gi(i);  // both updates above hit (j, j) once
    return true;
}

inline void swap_cols(Mat& G, Mat& U, int i, int j) {
    U.col(i).swap(U.col(j));
    G.col(i).swap(G.col(j));
    G.row(i).swap(G.row(j));
}

inline void flip_col(Mat& G, Mat& U, int j) {
    U.col(j) = -U.col(j);
    G.col(j) = -G.col(j);
    G.row(j) = -G.row(j);
}

// Extend a primitive integer vector to a unimodular matrix with that vector
// as first column, by reducing it to e1 with tracked elementary operations.
inline Mat unimodular_completion(std::vector<long long> u) {
    const int n = static_cast<int>(u.size());
    Mat W = Mat::Identity(n, n);  // row operations applied to u
    // zero out entries 1..n-1 against a pivot by Euclid
    while (true) {
        int nz = -1, cnt = 0;
        for (int i = 0; i < n; ++i)
            if (u[i] != 0) { ++cnt; if (nz < 0 || std::llabs(u[i]) < std::llabs(u[nz])) nz = i; }
        if (cnt <= 1) break;
        for (int i = 0; i < n; ++i) {
            if (i == nz || u[i] == 0) continue;
            const long long q = u[i] / u[nz];
            u[i] -= q * u[nz];
            W.row(i) -= static_cast<double>(q) * W.row(nz);
        }
    }
    int piv = 0;
    for (int i = 0; i < n; ++i)
        if (u[i] != 0) piv = i;
    if (piv != 0) { W.row(0).swap(W.row(piv)); std::swap(u[0], u[piv]); }
    if (u[0] < 0) { W.row(0) = -W.row(0); u[0] = -u[0]; }
    // u was primitive, so now u = e1 and W u_orig = e1; the completion is W^-1
    Mat U = W.inverse();
    for (Eigen::Index i = 0; i < U.size(); ++i) U(i) = std::round(U(i));
    return U;
}

// Exhaustive search for an integer vector shorter than the current first
// basis vector, coordinates in [-r, r]. Returns the best strict improver.
inline std::optional<std::vector<long long>> shorter_vector(const Mat& G, int r) {
    const int n = static_cast<int>(G.rows());
    const double best0 = G(0, 0);
    double best = best0 * (1 - 1e-12);
    std::optional<std::vector<long long>> out;
    std::vector<long long> u(n, -r);
    while (true) {
        bool zero = true;
        for (int i = 0; i < n; ++i) zero = zero && u[i] == 0;
        if (!zero) {
            double q = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q += u[i] * G(i, j) * u[j];
            if (q < best) {
                // require primitivity
                long long g = 0;
                for (int i = 0; i < n; ++i) g = std::gcd(g, std::llabs(u[i]));
                if (g == 1) { best = q; out = u; }
            }
        }
        int k = 0;
        while (k < n && u[k] == r) { u[k] = -r; ++k; }
        if (k == n) break;
        ++u[k];
    }
    return out;
}

} // namespace detail

// Reduce a positive definite form under GL(n, Z): pairwise size reduction and
// diagonal sorting, with an exact shortest-vector refinement for n <= 4, then
// sign normalization of the superdiagonal. reduced = U^T Y U.
inline MinkowskiResult minkowski_reduce(const RealSymMatrix& Ysym) {
    const Mat& Y = Ysym.entries();
    if (!is_positive_definite(Y))
        throw not_positive_definite("minkowski_reduce: input not positive definite");
    const int n = Ysym.order();
    MinkowskiResult res;
    res.U = Mat::Identity(n, n);
    res.approximate = n > 4;
    Mat G = Y;

    auto greedy = [&]() {
        for (int pass = 0; pass < 1000; ++pass) {
            bool changed = false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && detail::size_reduce_pair(G, res.U, i, j)) {
                        changed = true;
                        ++res.word_length;
                    }
            for (int i = 0; i + 1 < n; ++i)
                if (G(i + 1, i + 1) < G(i, i) * (1 - 1e-14)) {
                    detail::swap_cols(G, res.U, i, i + 1);
                    changed = true;
                    ++res.word_length;
                }
            if (!changed) break;
        }
    };
    greedy();
    if (n >= 2 && n <= 4) {
        for (int round = 0; round < 32; ++round) {
            auto u = detail::shorter_vector(G, 3);
            if (!u) break;
            const Mat C = detail::unimodular_completion(*u);
            res.U = res.U * C;
            G = (C.transpose() * G * C).eval();
            ++res.word_length;
            greedy();
        }
    }
    for (int i = 0; i + 1 < n; ++i)
        if (G(i, i + 1) < 0) {
            detail::flip_col(G, res.U, i + 1);
            ++res.word_length;
        }
    res.reduced = 0.5 * (G + G.transpose());
    // recompute from U to eliminate accumulated update error
    res.reduced = res.U.transpose() * Y * res.U;
    res.reduced = 0.5 * (res.reduced + res.reduced.transpose()).eval();
    return res;
}

inline bool is_minkowski_reduced(const Mat& Y, double tol = kDomainTol) {
    const int n = static_cast<int>(Y.rows());
    const double scale = Y.cwiseAbs().maxCoeff();
    for (int i = 0; i + 1 < n; ++i) {
        if (Y(i, i) > Y(i + 1, i + 1) + tol * scale) return false;
        if (Y(i, i + 1) < -tol * scale) return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (2 * std::abs(Y(i, j)) > Y(i, i) + tol * scale) return false;
    if (n >= 2 && n <= 4) {
        if (detail::shorter_vector(Y, 3)) return false;
    }
    return true;
}

struct SiegelReductionResult {
    SiegelPoint reduced;
    SymplecticElement transform;  // reduced == sp_action(transform, input)
    int word_length = 0;
};

namespace detail {

// Partial inversions composed with unit translations; the finite dilation set
// used both by siegel_reduce and by the fundamental-domain membership test.
inline const std::vector<SymplecticElement>& dilation_set(int g) {
    static std::vector<std::vector<SymplecticElement>> cache(4);
    if (g < 1 || g > 3)
        throw unsupported("dilation_set: genus must be 1..3");
    auto& set = cache[g];
    if (!set.empty()) return set;

    std::vector<SymplecticElement> inversions;
    for (unsigned mask = 1; mask < (1u << g); ++mask) {
        Mat A = Mat::Zero(g, g), B = Mat::Zero(g, g), C = Mat::Zero(g, g),
            D = Mat::Zero(g, g);
        for (int i = 0; i < g; ++i) {
            if (mask & (1u << i)) {
                B(i, i) = -1;
                C(i, i) = 1;
            } else {
                A(i, i) = 1;
                D(i, i) = 1;
            }
        }
        inversions.emplace_back(A, B, C, D);
    }
    // symmetric integer matrices with entries in {-1, 0, 1}
    const int nsym = g * (g + 1) / 2;
    std::vector<Mat> shifts;
    std::vector<int> e(nsym, -1);
    while (true) {
        Mat S = Mat::Zero(g, g);
        int k = 0;
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                S(i, j) = e[k];
                S(j, i) = e[k];
                ++k;
            }
        shifts.push_back(S);
        int c = 0;
        while (c < nsym && e[c] == 1) { e[c] = -1; ++c; }
        if (c == nsym) break;
        ++e[c];
    }
    for (const auto& inv : inversions)
        for (const auto& S : shifts)
            set.push_back(inv * SymplecticElement::translation(S));
    return set;
}

inline double abs_det_denominator(const SymplecticElement& M, const CMat& Z) {
    const CMat den = M.C().cast<complexd>() * Z + M.D().cast<complexd>();
    return std::abs(den.determinant());
}

} // namespace detail

// Reduce Z into the Siegel fundamental domain of Sp(2g, Z):
// iterate Minkowski reduction of Y, translation of X into [-1/2, 1/2], and
// dilation steps whenever some candidate has |det(CZ + D)| < 1.
inline SiegelReductionResult siegel_reduce(const SiegelPoint& Z0) {
    const int g = Z0.genus();
    if (g > 3)
        throw unsupported("siegel_reduce: genus must be 1..3");
    SymplecticElement total = SymplecticElement::identity(g);
    SiegelPoint Z = Z0;
    int words = 0;
    const auto& dilations = detail::dilation_set(g);

    for (int iter = 0; iter < kSiegelIterationCap; ++iter) {
        // (i) Minkowski-reduce the imaginary part
        MinkowskiResult mr = minkowski_reduce(RealSymMatrix(Z.Y()));
        if ((mr.U - Mat::Identity(g, g)).cwiseAbs().maxCoeff() > 0) {
            SymplecticElement R = SymplecticElement::basis_change(mr.U.transpose());
            Z = sp_action(R, Z);
            total = R * total;
            ++words;
        }
        // (ii) translate X into [-1/2, 1/2]
        Mat T = Mat::Zero(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                T(i, j) = -round_even(Z.X()(i, j));
                T(j, i) = T(i, j);
            }
        if (T.cwiseAbs().maxCoeff() > 0) {
            SymplecticElement Tr = SymplecticElement::translation(T);
            Z = sp_action(Tr, Z);
            total = Tr * total;
            ++words;
        }
        // (iii) dilation step: pick the candidate with smallest |det(CZ + D)|
        const CMat Zc = Z.Z();
        double best = 1.0 - kDomainTol;
        const SymplecticElement* pick = nullptr;
        for (const auto& M : dilations) {
            const double d = detail::abs_det_denominator(M, Zc);
            if (d < best) {
                best = d;
                pick = &M;
            }
        }
        if (!pick)
            return SiegelReductionResult{Z, total, words};
        Z = sp_action(*pick, Z);
        total = (*pick) * total;
        ++words;
    }
    throw iteration_limit_exceeded("siegel_reduce: iteration cap reached");
}

inline bool in_fundamental_domain(const SiegelPoint& Z, double tol = kDomainTol) {
    const int g = Z.genus();
    if (g > 3)
        throw unsupported("in_fundamental_domain: genus must be 1..3");
    if (!is_minkowski_reduced(Z.Y(), tol)) return false;
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            if (std::abs(Z.X()(i, j)) > 0.5 + tol) return false;
    const CMat Zc = Z.Z();
    for (const auto& M : detail::dilation_set(g))
        if (detail::abs_det_denominator(M, Zc) < 1.0 - tol) return false;
    return true;
}

} // namespace siegel

#endif
