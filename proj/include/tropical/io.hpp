#pragma once

// JSON reading and writing for fans, weights, functions, complexes, cycles
// and Cartier divisors. Rationals are "p/q" strings, integers are bare.

#include "tropical/cycle.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tropical {

using Json = nlohmann::json;

namespace io {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::size_t to_index(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail("expected a non-negative index, got " + j.dump());
    return j.get<std::size_t>();
}

inline Integer to_integer(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        Rational q = parse_rational(j.get<std::string>());
        if (denominator(q) != 1) parse_fail("expected an integer, got " + j.dump());
        return numerator(q);
    }
    parse_fail("expected an integer, got " + j.dump());
}

inline Rational to_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    parse_fail("expected a rational, got " + j.dump());
}

inline Json from_integer(const Integer& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return Json(x.convert_to<long long>());
    return Json(x.str());
}

inline Json from_rational(const Rational& q) { return Json(to_string(q)); }

inline IntVector to_int_vector(const Json& j, std::size_t n) {
    if (!j.is_array()) parse_fail("expected an array, got " + j.dump());
    if (j.size() != n) parse_fail("expected " + std::to_string(n) + " coordinates, got " + j.dump());
    IntVector v;
    for (const auto& x : j) v.push_back(to_integer(x));
    return v;
}

inline RatVector to_rat_vector(const Json& j, std::size_t n) {
    if (!j.is_array()) parse_fail("expected an array, got " + j.dump());
    if (j.size() != n) parse_fail("expected " + std::to_string(n) + " coordinates, got " + j.dump());
    RatVector v;
    for (const auto& x : j) v.push_back(to_rational(x));
    return v;
}

template <class F>
auto to_list(const Json& j, F&& f) {
    if (!j.is_array()) parse_fail("expected an array, got " + j.dump());
    std::vector<decltype(f(j))> out;
    for (const auto& x : j) out.push_back(f(x));
    return out;
}

inline Json int_vector_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(from_integer(x));
    return a;
}

inline Json rat_vector_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(from_rational(x));
    return a;
}

inline std::size_t ambient(const Json& j) {
    std::size_t n = to_index(field(j, "ambient_dim"));
    if (n == 0) parse_fail("ambient_dim must be positive");
    return n;
}

} // namespace io

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

/// A fan together with the ray list of the file it came from, so that
/// ray and cone indices in companion files can be resolved.
struct LoadedFan {
    FanPtr fan;
    std::vector<IntVector> file_rays;

    /// Cone spanned by the listed file rays.
    std::size_t cone(const std::vector<std::size_t>& ray_indices) const {
        std::vector<IntVector> g;
        for (auto i : ray_indices) {
            if (i >= file_rays.size()) io::parse_fail("ray index " + std::to_string(i) + " out of range");
            g.push_back(file_rays[i]);
        }
        auto c = Cone::from_rays(fan->ambient_dim(), g, fan->lineality());
        auto idx = fan->find(c);
        if (!idx) throw Error(ErrorCode::NotAFace, "no cone " + Fan::describe(c) + " in the fan");
        return *idx;
    }

    std::size_t ray(std::size_t i) const {
        if (i >= file_rays.size()) io::parse_fail("ray index " + std::to_string(i) + " out of range");
        auto p = primitive(file_rays[i]);
        for (std::size_t r = 0; r < fan->rays().size(); ++r)
            if (fan->rays()[r] == p) return r;
        throw Error(ErrorCode::NotAFace, "ray " + vector_to_string(p) + " is not a ray of the fan");
    }
};

inline Json fan_to_json(const Fan& f) {
    Json j;
    j["ambient_dim"] = f.ambient_dim();
    j["rays"] = Json::array();
    for (const auto& r : f.rays()) j["rays"].push_back(io::int_vector_json(r));
    j["maximal_cones"] = Json::array();
    for (auto m : f.maximal_cones()) j["maximal_cones"].push_back(f.cone_rays(m));
    if (!f.lineality().empty()) {
        j["lineality"] = Json::array();
        for (const auto& l : f.lineality()) j["lineality"].push_back(io::int_vector_json(l));
    }
    return j;
}

/// Parses and validates a fan.
inline LoadedFan fan_from_json(const Json& j) {
    const std::size_t n = io::ambient(j);
    LoadedFan out;
    out.file_rays = io::to_list(io::field(j, "rays"), [&](const Json& r) { return io::to_int_vector(r, n); });
    auto maximal = io::to_list(io::field(j, "maximal_cones"),
                               [](const Json& c) { return io::to_list(c, io::to_index); });
    std::vector<IntVector> lin;
    if (j.contains("lineality"))
        lin = io::to_list(j.at("lineality"), [&](const Json& r) { return io::to_int_vector(r, n); });
    for (const auto& r : out.file_rays)
        if (is_zero(r)) throw Error(ErrorCode::ZeroVector, "zero ray in fan file");
    out.fan = share(Fan::from_rays(n, out.file_rays, maximal, true, lin));
    return out;
}

/// A "fan" field holding either an inline fan or a path relative to `base`.
inline LoadedFan resolve_fan(const Json& ref, const std::filesystem::path& base) {
    if (ref.is_string()) return fan_from_json(read_json_file(base / ref.get<std::string>()));
    return fan_from_json(ref);
}

inline Json weight_to_json(const MinkowskiWeight& c) {
    Json j;
    j["fan"] = fan_to_json(c.fan());
    j["codim"] = c.codim();
    j["entries"] = Json::array();
    for (const auto& [s, w] : c.entries())
        j["entries"].push_back({{"cone", c.fan().cone_rays(s)}, {"weight", io::from_integer(w)}});
    return j;
}

inline MinkowskiWeight weight_from_json(const Json& j, const LoadedFan& fan) {
    std::size_t k = io::to_index(io::field(j, "codim"));
    if (k > fan.fan->ambient_dim()) throw Error(ErrorCode::WrongCodimension, "codim exceeds the ambient dimension");
    MinkowskiWeight c(fan.fan, k);
    for (const auto& e : io::field(j, "entries")) {
        auto idx = fan.cone(io::to_list(io::field(e, "cone"), io::to_index));
        if (fan.fan->ambient_dim() - fan.fan->cone(idx).dim() != k)
            throw Error(ErrorCode::WrongCodimension, "entry " + e.dump() + " is not of codimension " + std::to_string(k));
        c.set(idx, c(idx) + io::to_integer(io::field(e, "weight")));
    }
    return c;
}

inline MinkowskiWeight weight_from_json(const Json& j, const std::filesystem::path& base) {
    return weight_from_json(j, resolve_fan(io::field(j, "fan"), base));
}

/// "ray_values" keyed by file ray index (missing rays are 0), or
/// "cone_covectors" on cones given by file ray indices.
inline PiecewiseLinearFunction function_from_json(const Json& j, const LoadedFan& fan) {
    const std::size_t n = fan.fan->ambient_dim();
    if (j.contains("ray_values")) {
        const auto& rv = j.at("ray_values");
        if (!rv.is_object()) io::parse_fail("ray_values must be an object");
        std::vector<Integer> values(fan.fan->rays().size(), Integer(0));
        for (const auto& [key, value] : rv.items()) {
            std::size_t i = 0;
            try {
                i = std::stoul(key);
            } catch (const std::exception&) {
                io::parse_fail("bad ray index '" + key + "'");
            }
            values[fan.ray(i)] = io::to_integer(value);
        }
        return PiecewiseLinearFunction::from_ray_values(fan.fan, values);
    }
    std::map<std::size_t, IntVector> cov;
    for (const auto& e : io::field(j, "cone_covectors"))
        cov[fan.cone(io::to_list(io::field(e, "cone"), io::to_index))] = io::to_int_vector(io::field(e, "m"), n);
    return PiecewiseLinearFunction::from_covectors(fan.fan, cov);
}

inline Json function_to_json(const PiecewiseLinearFunction& f) {
    Json j;
    j["fan"] = fan_to_json(f.fan());
    j["cone_covectors"] = Json::array();
    for (auto m : f.fan().maximal_cones())
        if (f.defined_on(m))
            j["cone_covectors"].push_back({{"cone", f.fan().cone_rays(m)}, {"m", io::int_vector_json(f.covector(m))}});
    return j;
}

inline Json polyhedron_to_json(const Polyhedron& p) {
    Json c;
    c["vertices"] = Json::array();
    for (const auto& v : p.vertices()) c["vertices"].push_back(io::rat_vector_json(v));
    c["rays"] = Json::array();
    for (const auto& r : p.rays()) c["rays"].push_back(io::int_vector_json(r));
    c["lineality"] = Json::array();
    for (const auto& l : p.lineality()) c["lineality"].push_back(io::int_vector_json(l));
    return c;
}

inline Polyhedron polyhedron_from_json(const Json& c, std::size_t n) {
    auto vs = io::to_list(io::field(c, "vertices"), [&](const Json& v) { return io::to_rat_vector(v, n); });
    std::vector<IntVector> rays, lin;
    if (c.contains("rays")) rays = io::to_list(c.at("rays"), [&](const Json& v) { return io::to_int_vector(v, n); });
    if (c.contains("lineality"))
        lin = io::to_list(c.at("lineality"), [&](const Json& v) { return io::to_int_vector(v, n); });
    if (vs.empty()) io::parse_fail("a cell needs at least one vertex");
    return Polyhedron::from_v_rep(n, vs, rays, lin);
}

inline Json complex_to_json(const PolyhedralComplex& c) {
    Json j;
    j["ambient_dim"] = c.ambient_dim();
    j["cells"] = Json::array();
    for (auto m : c.maximal_cells()) j["cells"].push_back(polyhedron_to_json(c.cell(m)));
    return j;
}

/// Cells exactly as listed in a complex or cycle file.
inline std::vector<Polyhedron> cells_from_json(const Json& j) {
    const std::size_t n = io::ambient(j);
    return io::to_list(io::field(j, "cells"), [&](const Json& c) { return polyhedron_from_json(c, n); });
}

inline PolyhedralComplex complex_from_json(const Json& j) {
    return PolyhedralComplex::from_cells(io::ambient(j), cells_from_json(j), true);
}

/// Lists only the weighted cells.
inline Json cycle_to_json(const TropicalCycle& c) {
    Json j;
    j["ambient_dim"] = c.ambient_dim();
    j["dim"] = c.dim();
    j["cells"] = Json::array();
    j["weights"] = Json::array();
    std::size_t i = 0;
    for (const auto& [p, w] : c.weighted_cells()) {
        j["cells"].push_back(polyhedron_to_json(p));
        j["weights"].push_back({{"cell", i++}, {"weight", io::from_integer(w)}});
    }
    return j;
}

/// Parses a cycle without checking balancing. Unweighted cells only shape the
/// complex; "dim" defaults to the dimension of the weighted cells.
inline TropicalCycle cycle_from_json(const Json& j) {
    const std::size_t n = io::ambient(j);
    auto cells = cells_from_json(j);
    std::map<std::size_t, Integer> listed;
    for (const auto& e : io::field(j, "weights")) {
        auto i = io::to_index(io::field(e, "cell"));
        if (i >= cells.size()) io::parse_fail("weight on unknown cell " + std::to_string(i));
        listed[i] += io::to_integer(io::field(e, "weight"));
    }
    std::size_t d = 0;
    if (j.contains("dim")) d = io::to_index(j.at("dim"));
    else if (!listed.empty()) d = cells[listed.begin()->first].dim();
    auto complex = PolyhedralComplex::from_cells(n, cells, true);
    std::map<std::size_t, Integer> weights;
    for (const auto& [i, w] : listed) {
        if (cells[i].dim() != d)
            throw Error(ErrorCode::WrongCodimension, "weighted cell " + describe(cells[i]) + " is not of dimension " +
                                                         std::to_string(d));
        weights[complex.index_of(cells[i])] += w;
    }
    return TropicalCycle(complex, d, weights);
}

/// Either {"min_of_affine": [{"m": [...], "c": "p/q"}]} or {"charts": [{"cells":
/// [...], "functions": [{"cell": i, "m": [...], "c": "p/q"}]}]}, with cell
/// indices into the "cells" list of the cycle file `cycle_json`.
inline CartierDivisor cartier_from_json(const Json& j, const Json& cycle_json, const PolyhedralComplex& complex) {
    const std::size_t n = complex.ambient_dim();
    auto affine = [&](const Json& e) {
        return AffineFunction{io::to_int_vector(io::field(e, "m"), n),
                              e.contains("c") ? io::to_rational(e.at("c")) : Rational(0)};
    };
    if (j.contains("min_of_affine")) return min_of_affine(complex, io::to_list(j.at("min_of_affine"), affine));
    auto cells = cells_from_json(cycle_json);
    auto cell = [&](const Json& e) {
        auto i = io::to_index(e);
        if (i >= cells.size()) io::parse_fail("unknown cell " + std::to_string(i));
        return complex.index_of(cells[i]);
    };
    std::vector<CartierChart> charts;
    for (const auto& ch : io::field(j, "charts")) {
        CartierChart c;
        for (const auto& i : io::field(ch, "cells")) c.cells.insert(cell(i));
        for (const auto& f : io::field(ch, "functions")) c.functions[cell(io::field(f, "cell"))] = affine(f);
        charts.push_back(std::move(c));
    }
    return CartierDivisor(complex, charts);
}

inline Json balancing_report(const std::vector<BalancingViolation>& v, const Fan& f) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back({{"cone", f.cone_rays(x.tau)}, {"defect", io::int_vector_json(x.defect)}});
    return a;
}

inline Json cycle_balancing_report(const std::vector<CycleViolation>& v, const PolyhedralComplex& c) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back({{"cell", polyhedron_to_json(c.cell(x.cell))}, {"defect", io::int_vector_json(x.defect)}});
    return a;
}

} // namespace tropical
