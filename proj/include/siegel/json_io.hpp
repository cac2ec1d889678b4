#ifndef SIEGEL_JSON_IO_HPP
#define SIEGEL_JSON_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "siegel/core.hpp"
#include "siegel/degeneration.hpp"
#include "siegel/measure.hpp"
#include "siegel/universal.hpp"

namespace siegel {
namespace io {

using nlohmann::json;

// All emitted numbers carry 15 significant digits; rounding before
// serialization keeps the printed form and the parsed value identical.
inline double round15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return std::strtod(buf, nullptr);
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round15(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw invalid_config("matrix JSON: expected a non-empty array of rows");
    const auto rows = j.size();
    const auto cols = j.at(0).size();
    Mat m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j.at(i).size() != cols)
            throw invalid_config("matrix JSON: ragged rows");
        for (size_t k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

inline json to_json(const SiegelPoint& z) {
    return json{{"g", z.genus()}, {"X", matrix_to_json(z.X())}, {"Y", matrix_to_json(z.Y())}};
}

inline SiegelPoint point_from_json(const json& j) {
    const int g = j.at("g").get<int>();
    Mat X = matrix_from_json(j.at("X"));
    Mat Y = matrix_from_json(j.at("Y"));
    if (X.rows() != g || Y.rows() != g)
        throw order_mismatch("point JSON: matrix order does not match g");
    return SiegelPoint(X, Y);
}

inline json to_json(const SymplecticElement& m) {
    return json{{"g", m.genus()},
                {"A", matrix_to_json(m.A())},
                {"B", matrix_to_json(m.B())},
                {"C", matrix_to_json(m.C())},
                {"D", matrix_to_json(m.D())}};
}

inline SymplecticElement element_from_json(const json& j) {
    const int g = j.at("g").get<int>();
    Mat A = matrix_from_json(j.at("A"));
    if (A.rows() != g)
        throw order_mismatch("element JSON: matrix order does not match g");
    return SymplecticElement(A, matrix_from_json(j.at("B")),
                             matrix_from_json(j.at("C")), matrix_from_json(j.at("D")));
}

inline json to_json(const UniversalPoint& u) {
    return json{{"g", u.genus()}, {"point", to_json(u.point())}};
}

inline UniversalPoint universal_from_json(const json& j) {
    const SiegelPoint z = point_from_json(j.at("point"));
    if (j.at("g").get<int>() != z.genus())
        throw order_mismatch("universal point JSON: g does not match point");
    return UniversalPoint(z);
}

inline json to_json(const StratumDescriptor& d) {
    return json{{"kind", d.kind == StratumKind::Interior ? "interior" : "boundary"},
                {"genera", d.genera}};
}

inline StratumDescriptor descriptor_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const std::vector<int> genera = j.at("genera").get<std::vector<int>>();
    if (kind == "interior") {
        if (genera.size() != 1)
            throw invalid_config("descriptor JSON: interior needs exactly one genus");
        return StratumDescriptor::interior(genera[0]);
    }
    if (kind == "boundary") return StratumDescriptor::boundary(genera);
    throw invalid_config("descriptor JSON: unknown kind '" + kind + "'");
}

inline json to_json(const MCResult& r) {
    return json{{"estimate", round15(r.estimate)},
                {"stderr", round15(r.std_error)},
                {"n", r.n_samples},
                {"seed", r.seed}};
}

inline json to_json(const DegenerationReport& rep) {
    json pts = json::array(), off = json::array(), imd = json::array(),
         dst = json::array();
    for (const auto& p : rep.reduced_points) pts.push_back(to_json(p));
    for (double v : rep.offdiag_norms) off.push_back(round15(v));
    for (double v : rep.im_diag_max) imd.push_back(round15(v));
    for (double v : rep.distance_to_first) dst.push_back(round15(v));
    return json{{"reduced_points", pts},
                {"offdiag_norms", off},
                {"im_diag_max", imd},
                {"distance_to_first", dst},
                {"classification",
                 rep.classification == NeckClassification::Finite ? "finite"
                                                                  : "divergent"}};
}

} // namespace io
} // namespace siegel

#endif
