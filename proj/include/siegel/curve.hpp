#ifndef SIEGEL_CURVE_HPP
#define SIEGEL_CURVE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

inline constexpr double kSentinelFactor = 1e6;

// y^2 = prod (x - b_j) with distinct real branch points, sorted ascending.
// Odd-degree models carry a sentinel branch point far to the right standing
// in for the point at infinity; has_sentinel records that.
class HyperellipticCurve {
public:
    explicit HyperellipticCurve(std::vector<double> branch_points,
                                std::string label = {}, bool has_sentinel = false)
        : points_(std::move(branch_points)), label_(std::move(label)),
          sentinel_(has_sentinel) {
        if (points_.size() < 4 || points_.size() % 2 != 0)
            throw invalid_curve("HyperellipticCurve: need an even number >= 4 of branch points");
        std::sort(points_.begin(), points_.end());
        const double spread = points_.back() - points_.front();
        double min_gap = spread;
        for (size_t i = 0; i + 1 < points_.size(); ++i)
            min_gap = std::min(min_gap, points_[i + 1] - points_[i]);
        if (!(min_gap > 1e-10 * spread))
            throw invalid_curve("HyperellipticCurve: branch points too close");
    }

    // Odd-degree normal form y^2 of degree 2g+1; appends the sentinel.
    static HyperellipticCurve from_odd_model(std::vector<double> pts,
                                             std::string label = {},
                                             double sentinel_factor = kSentinelFactor) {
        if (pts.size() < 3 || pts.size() % 2 != 1)
            throw invalid_curve("from_odd_model: need an odd number >= 3 of branch points");
        std::sort(pts.begin(), pts.end());
        const double spread = pts.back() - pts.front();
        pts.push_back(pts.back() + sentinel_factor * spread);
        return HyperellipticCurve(std::move(pts), std::move(label), true);
    }

    int genus() const { return static_cast<int>(points_.size()) / 2 - 1; }
    const std::vector<double>& branch_points() const { return points_; }
    const std::string& label() const { return label_; }
    bool has_sentinel() const { return sentinel_; }
    double spread() const { return points_.back() - points_.front(); }

    // Same finite points, sentinel pushed out by the given factor.
    HyperellipticCurve with_sentinel_scaled(double factor) const {
        if (!sentinel_)
            throw invalid_curve("with_sentinel_scaled: curve has no sentinel");
        std::vector<double> pts(points_.begin(), points_.end() - 1);
        const double spread = pts.back() - pts.front();
        const double offset = points_.back() - pts.back();
        pts.push_back(pts.back() + factor * offset);
        (void)spread;
        return HyperellipticCurve(std::move(pts), label_, true);
    }

private:
    std::vector<double> points_;
    std::string label_;
    bool sentinel_ = false;
};

} // namespace siegel

#endif
