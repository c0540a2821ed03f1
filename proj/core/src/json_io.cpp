#include "polyangle/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <utility>

namespace polyangle {

Json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) {
        return Json(format_rational(s.rational()));
    }
    Json j;
    j["mean"] = s.mean();
    j["se"] = s.se();
    return j;
}

Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) {
        return Scalar::exact(parse_rational(j.get<std::string>()));
    }
    if (j.is_object()) {
        return Scalar::estimate(j.at("mean").get<double>(), j.at("se").get<double>());
    }
    throw std::invalid_argument("scalar JSON must be a \"p/q\" string or {mean, se}");
}

Json alpha_entry_to_json(const Scalar& s) {
    Json j;
    j["mean"] = s.mean();
    j["se"] = s.se();
    if (s.is_exact()) {
        j["exact"] = format_rational(s.rational());
    } else {
        j["exact"] = nullptr;
    }
    return j;
}

Json alpha_to_json(const AlphaVector& a) {
    Json arr = Json::array();
    for (const Scalar& s : a.entries) {
        arr.push_back(alpha_entry_to_json(s));
    }
    return arr;
}

Json int_to_json(const Int& value) {
    if (value >= std::numeric_limits<std::int64_t>::min() &&
        value <= std::numeric_limits<std::int64_t>::max()) {
        return Json(value.convert_to<std::int64_t>());
    }
    return Json(value.str());
}

Json int_vector_to_json(const std::vector<Int>& values) {
    Json arr = Json::array();
    for (const Int& v : values) {
        arr.push_back(int_to_json(v));
    }
    return arr;
}

Json polytope_to_json(const VPolytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    Json verts = Json::array();
    for (const Point& v : p.vertices()) {
        Json row = Json::array();
        for (const Rational& c : v) {
            row.push_back(format_rational(c));
        }
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    return j;
}

VPolytope polytope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("vertices")) {
        throw std::invalid_argument("polytope JSON needs ambient_dim and vertices");
    }
    const int ambient = j.at("ambient_dim").get<int>();
    if (ambient < 0) {
        throw std::invalid_argument("ambient_dim must be nonnegative");
    }
    std::vector<Point> vertices;
    for (const Json& row : j.at("vertices")) {
        Point v;
        v.reserve(row.size());
        for (const Json& c : row) {
            v.push_back(parse_rational(c.get<std::string>()));
        }
        if (static_cast<int>(v.size()) != ambient) {
            throw std::invalid_argument("vertex length disagrees with ambient_dim");
        }
        vertices.push_back(std::move(v));
    }
    return VPolytope::from_vertices(std::move(vertices));
}

void write_polytope_file(const std::string& path, const VPolytope& p) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << polytope_to_json(p).dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

VPolytope read_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    Json j = Json::parse(in);
    return polytope_from_json(j);
}

Json residual_to_json(const RelationResidual& r) {
    Json j;
    j["relation"] = r.relation;
    if (r.k.has_value()) {
        j["k"] = *r.k;
    } else {
        j["k"] = nullptr;
    }
    if (r.value.is_exact()) {
        j["residual"] = format_rational(r.value.rational());
    } else {
        j["residual"] = r.value.mean();
    }
    if (r.sigma_ratio.has_value()) {
        j["sigma_ratio"] = *r.sigma_ratio;
    } else {
        j["sigma_ratio"] = nullptr;
    }
    return j;
}

Json verdict_to_json(const SpanVerdict& v) {
    Json j;
    j["theorem"] = v.theorem;
    j["d"] = v.d;
    j["expected_dim"] = v.expected_dim;
    j["computed_dim"] = v.computed_dim;
    j["mode"] = v.mode == ScalarMode::Exact ? "exact" : "numeric";
    if (v.margin.has_value()) {
        j["margin"] = *v.margin;
    } else {
        j["margin"] = nullptr;
    }
    j["family"] = v.family;
    j["matched"] = v.matched;
    j["notes"] = v.notes;
    return j;
}

}  // namespace polyangle
