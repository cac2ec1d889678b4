#ifndef SIEGEL_UNIVERSAL_HPP
#define SIEGEL_UNIVERSAL_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "siegel/core.hpp"

namespace siegel {

inline constexpr double kPaddingTol = 1e-9;
inline constexpr double kCouplingTol = 1e-6;
inline constexpr double kDivergenceRatio = 1e8;

enum class StratumKind { Interior, Boundary };

// Interior: singleton {g}. Boundary: multiset of component genera, sorted;
// the empty multiset is the cusp A_0.
struct StratumDescriptor {
    StratumKind kind = StratumKind::Interior;
    std::vector<int> genera;  // kept sorted ascending

    static StratumDescriptor interior(int g) {
        return {StratumKind::Interior, {g}};
    }
    static StratumDescriptor boundary(std::vector<int> gs) {
        std::sort(gs.begin(), gs.end());
        return {StratumKind::Boundary, std::move(gs)};
    }
    bool operator==(const StratumDescriptor& o) const {
        return kind == o.kind && genera == o.genera;
    }
};

// Pad X by zero blocks and Y by identity blocks up to the target genus.
inline SiegelPoint embed_point(const SiegelPoint& Z, int target_genus) {
    const int g = Z.genus();
    if (target_genus < g)
        throw genus_mismatch("embed_point: target genus smaller than source");
    if (target_genus == g) return Z;
    Mat X = Mat::Zero(target_genus, target_genus);
    Mat Y = Mat::Identity(target_genus, target_genus);
    X.topLeftCorner(g, g) = Z.X();
    Y.topLeftCorner(g, g) = Z.Y();
    return SiegelPoint(X, Y);
}

namespace detail {

// True when the trailing row/column of (X, Y) matches the padding pattern
// (X: zero, Y: unit vector e_g) within tolerance.
inline bool trailing_block_is_padding(const Mat& X, const Mat& Y, double tol) {
    const int g = static_cast<int>(X.rows());
    if (g <= 1) return false;
    const int k = g - 1;
    for (int i = 0; i < g; ++i) {
        if (std::abs(X(i, k)) > tol) return false;
        const double y = (i == k) ? 1.0 : 0.0;
        if (std::abs(Y(i, k) - y) > tol) return false;
    }
    return true;
}

} // namespace detail

// A canonical (minimal-support) representative of a point of h_infinity.
class UniversalPoint {
public:
    explicit UniversalPoint(const SiegelPoint& p) : point_(p) {}
    int genus() const { return point_.genus(); }
    const SiegelPoint& point() const { return point_; }

private:
    SiegelPoint point_;
};

// Strip maximal trailing padding blocks; the result has minimal genus >= 1.
inline UniversalPoint stabilize(const SiegelPoint& Z) {
    Mat X = Z.X(), Y = Z.Y();
    while (detail::trailing_block_is_padding(X, Y, kPaddingTol)) {
        const int g = static_cast<int>(X.rows()) - 1;
        X = X.topLeftCorner(g, g).eval();
        Y = Y.topLeftCorner(g, g).eval();
    }
    return UniversalPoint(SiegelPoint(X, Y));
}

inline double universal_distance(const UniversalPoint& U1, const UniversalPoint& U2) {
    const int g = std::max(U1.genus(), U2.genus());
    return siegel_distance(embed_point(U1.point(), g), embed_point(U2.point(), g));
}

struct BoundaryProjection {
    StratumDescriptor descriptor;
    std::optional<SiegelPoint> point;  // empty exactly for the cusp A_0
};

// Indices whose Y-eigendirection has diverged past the ratio threshold,
// measured against the median of the other diagonal entries. Standard
// position (near block-diagonal) is assumed; callers reduce first.
inline std::vector<int> detect_divergent_directions(const SiegelPoint& Z) {
    const int g = Z.genus();
    std::vector<double> diag(g);
    for (int i = 0; i < g; ++i) diag[i] = Z.Y()(i, i);
    std::vector<double> sorted = diag;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[(g - 1) / 2];
    std::vector<int> out;
    for (int i = 0; i < g; ++i)
        if (diag[i] > kDivergenceRatio * med) out.push_back(i);
    return out;
}

// Project onto the standard boundary component spanned by the retained
// diagonal indices (0-based). Retaining everything is the interior case;
// retaining nothing is the cusp.
inline BoundaryProjection boundary_project(const SiegelPoint& Z,
                                           const std::vector<int>& retain) {
    const int g = Z.genus();
    std::vector<bool> keep(g, false);
    for (int i : retain) {
        if (i < 0 || i >= g)
            throw genus_mismatch("boundary_project: index out of range");
        keep[i] = true;
    }
    const int gp = static_cast<int>(retain.size());
    if (gp == g)
        return BoundaryProjection{StratumDescriptor::interior(g), Z};
    if (gp == 0)
        return BoundaryProjection{StratumDescriptor::boundary({}), std::nullopt};
    // coupling between retained and divergent blocks must be negligible,
    // measured against the retained block's scale
    double scale = 1.0;
    for (int i : retain) scale = std::max(scale, Z.Y()(i, i));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            if (keep[i] == keep[j]) continue;
            const double c = std::hypot(Z.X()(i, j), Z.Y()(i, j));
            if (c > kCouplingTol * scale)
                throw not_standard_position(
                    "boundary_project: off-diagonal coupling too large; reduce first");
        }
    Mat X(gp, gp), Y(gp, gp);
    std::vector<int> idx(retain);
    std::sort(idx.begin(), idx.end());
    for (int a = 0; a < gp; ++a)
        for (int b = 0; b < gp; ++b) {
            X(a, b) = Z.X()(idx[a], idx[b]);
            Y(a, b) = Z.Y()(idx[a], idx[b]);
        }
    return BoundaryProjection{StratumDescriptor::boundary({gp}),
                              SiegelPoint(X, Y)};
}

inline StratumDescriptor classify_stratum(const UniversalPoint& U) {
    return StratumDescriptor::interior(U.genus());
}

inline StratumDescriptor classify_stratum(const BoundaryProjection& B) {
    return B.descriptor;
}

} // namespace siegel

#endif
