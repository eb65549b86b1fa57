#pragma once

// Command implementations for the tropint tool. Exit codes: 0 ok, 1 invalid
// object, 2 parse or usage error, 3 failed equivalence check.

#include "tropical/tropical.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

namespace tropint {

using namespace tropical;
namespace fs = std::filesystem;

enum Exit { Ok = 0, Invalid = 1, ParseError = 2, NotEquivalent = 3 };

enum class Kind { Fan, Weight, Complex, Cycle, Function, Cartier };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Fan: return "fan";
    case Kind::Weight: return "weight";
    case Kind::Complex: return "complex";
    case Kind::Cycle: return "cycle";
    case Kind::Function: return "function";
    case Kind::Cartier: return "cartier";
    }
    return "unknown";
}

inline Kind detect(const Json& j) {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "top-level JSON value must be an object");
    if (j.contains("maximal_cones")) return Kind::Fan;
    if (j.contains("codim") && j.contains("entries")) return Kind::Weight;
    if (j.contains("cells")) return j.contains("weights") ? Kind::Cycle : Kind::Complex;
    if (j.contains("ray_values") || j.contains("cone_covectors")) return Kind::Function;
    if (j.contains("charts") || j.contains("min_of_affine")) return Kind::Cartier;
    throw Error(ErrorCode::Parse, "cannot tell what kind of object this is");
}

struct Input {
    Json json;
    fs::path base;
    Kind kind;
};

inline Input load(const std::string& path) {
    Input in;
    in.json = read_json_file(path);
    in.base = fs::path(path).parent_path();
    in.kind = detect(in.json);
    return in;
}

/// A weight or cycle operand, both forms kept when the input is a weight.
struct Operand {
    std::optional<MinkowskiWeight> weight;
    TropicalCycle cycle;
};

inline Operand operand(const Input& in) {
    Operand op;
    if (in.kind == Kind::Weight) {
        op.weight = weight_from_json(in.json, in.base);
        op.cycle = TropicalCycle::from_weight(*op.weight);
    } else if (in.kind == Kind::Cycle) {
        op.cycle = cycle_from_json(in.json);
    } else {
        throw Error(ErrorCode::InvalidArgument, std::string("expected a weight or cycle, got a ") + kind_name(in.kind));
    }
    return op;
}

/// Both weights moved to a common fan.
inline std::pair<MinkowskiWeight, MinkowskiWeight> on_common_fan(const MinkowskiWeight& a, const MinkowskiWeight& b) {
    if (a.fan_ptr() == b.fan_ptr() || a.fan() == b.fan()) {
        MinkowskiWeight rebased(a.fan_ptr(), b.codim());
        for (const auto& [s, w] : b.entries()) rebased.set(s, w);
        return {a, rebased};
    }
    auto common = share(common_refinement(a.fan(), b.fan()));
    return {refine_weight(a, common), refine_weight(b, common)};
}

inline void add_degree(Json& j, const MinkowskiWeight& w) {
    if (w.codim() == w.fan().ambient_dim()) j["degree"] = io::from_integer(degree(w));
}

inline void add_degree(Json& j, const TropicalCycle& c) {
    if (c.dim() == 0) j["degree"] = io::from_integer(cycle_degree(c));
}

/// Parses "a1,...,an:b" as the hyperplane a.x = b.
inline AffineInequality parse_hyperplane(const std::string& text, std::size_t n) {
    auto colon = text.find(':');
    std::string lhs = text.substr(0, colon);
    Rational rhs = colon == std::string::npos ? Rational(0) : parse_rational(text.substr(colon + 1));
    IntVector a;
    std::stringstream ss(lhs);
    std::string part;
    while (std::getline(ss, part, ',')) {
        Rational q = parse_rational(part);
        if (denominator(q) != 1) throw Error(ErrorCode::Parse, "hyperplane normal must be integral: " + text);
        a.push_back(numerator(q));
    }
    if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "hyperplane " + text + " has the wrong length");
    return {a, rhs};
}

struct Options {
    std::vector<std::string> files;
    std::uint64_t seed = 0;
    std::string convention = "kappa";
    bool check_equiv = false;
    bool raw = false;
    bool all = false;
    std::string output;
    std::size_t cell = 0;
    std::vector<std::string> hyperplanes;
    std::size_t n = 0;
    std::vector<std::size_t> indices;
};

struct Result {
    Json json;
    int code = Ok;
};

inline Result cmd_validate(const Options& o) {
    Result r;
    auto in = load(o.files.at(0));
    r.json["kind"] = kind_name(in.kind);
    try {
        switch (in.kind) {
        case Kind::Fan: {
            auto f = fan_from_json(in.json);
            r.json["complete"] = fan_is_complete(*f.fan);
            r.json["violations"] = Json::array();
            break;
        }
        case Kind::Weight: {
            auto w = weight_from_json(in.json, in.base);
            r.json["violations"] = balancing_report(check_balancing(w), w.fan());
            break;
        }
        case Kind::Complex:
            complex_from_json(in.json);
            r.json["violations"] = Json::array();
            break;
        case Kind::Cycle: {
            auto c = cycle_from_json(in.json);
            r.json["violations"] = cycle_balancing_report(check_cycle_balancing(c), c.complex());
            break;
        }
        case Kind::Function: {
            function_from_json(in.json, resolve_fan(io::field(in.json, "fan"), in.base));
            r.json["violations"] = Json::array();
            break;
        }
        case Kind::Cartier:
            throw Error(ErrorCode::InvalidArgument, "a Cartier divisor is validated together with its cycle by 'divisor'");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        r.json["violations"] = Json::array({{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}});
    }
    r.json["valid"] = r.json["violations"].empty();
    r.code = r.json["valid"].get<bool>() ? Ok : Invalid;
    return r;
}

inline Result cmd_cup(const Options& o) {
    auto a = load(o.files.at(0)), b = load(o.files.at(1));
    if (a.kind != Kind::Weight || b.kind != Kind::Weight) throw Error(ErrorCode::InvalidArgument, "cup takes two weights");
    auto [c1, c2] = on_common_fan(weight_from_json(a.json, a.base), weight_from_json(b.json, b.base));
    auto w = cup(c1, c2, o.seed);
    Result r{weight_to_json(w)};
    add_degree(r.json, w);
    return r;
}

inline Result cmd_ar(const Options& o) {
    auto a = operand(load(o.files.at(0))), b = operand(load(o.files.at(1)));
    Result r;
    if (a.weight && b.weight) {
        auto w = ar_product_fans(*a.weight, *b.weight);
        r.json = weight_to_json(w);
        add_degree(r.json, w);
        if (o.check_equiv) {
            auto [c1, c2] = on_common_fan(*a.weight, *b.weight);
            auto other = cup(c1, c2, o.seed);
            auto [x, y] = on_common_fan(w, other);
            bool same = x == y;
            r.json["equivalent"] = same;
            if (!same) r.code = NotEquivalent;
        }
        return r;
    }
    auto c = ar_product_cycles(a.cycle, b.cycle);
    r.json = cycle_to_json(c);
    add_degree(r.json, c);
    if (o.check_equiv) {
        bool same = cycles_equal(c, stable_intersect(a.cycle, b.cycle, o.seed));
        r.json["equivalent"] = same;
        if (!same) r.code = NotEquivalent;
    }
    return r;
}

inline Result cmd_stable(const Options& o) {
    auto a = operand(load(o.files.at(0))), b = operand(load(o.files.at(1)));
    auto c = stable_intersect(a.cycle, b.cycle, o.seed);
    Result r{cycle_to_json(c)};
    add_degree(r.json, c);
    return r;
}

inline Convention convention(const Options& o) {
    if (o.convention == "kappa") return Convention::Kappa;
    if (o.convention == "ar") return Convention::AllermannRau;
    throw Error(ErrorCode::Parse, "unknown convention '" + o.convention + "'");
}

inline Result cmd_divisor(const Options& o) {
    auto a = load(o.files.at(0)), b = load(o.files.at(1));
    Result r;
    if (a.kind == Kind::Weight && b.kind == Kind::Function) {
        auto fan = resolve_fan(io::field(a.json, "fan"), a.base);
        auto w = weight_from_json(a.json, fan);
        if (b.json.contains("fan")) {
            auto own = resolve_fan(b.json.at("fan"), b.base);
            if (!(*own.fan == *fan.fan)) throw Error(ErrorCode::SupportMismatch, "function and weight live on different fans");
            fan.file_rays = own.file_rays;
        }
        auto d = apply_function(w, function_from_json(b.json, fan), convention(o));
        r.json = weight_to_json(d);
        add_degree(r.json, d);
        return r;
    }
    if (a.kind == Kind::Cycle && b.kind == Kind::Cartier) {
        auto c = cycle_from_json(a.json);
        auto d = cartier_weil(c, cartier_from_json(b.json, a.json, c.complex()), convention(o));
        r.json = cycle_to_json(d);
        add_degree(r.json, d);
        return r;
    }
    throw Error(ErrorCode::InvalidArgument, "divisor takes a weight and a function, or a cycle and a Cartier divisor");
}

inline Result cmd_star(const Options& o) {
    auto in = load(o.files.at(0));
    auto op = operand(in);
    const auto& C = op.cycle.complex();
    std::size_t tau;
    if (in.kind == Kind::Cycle) {
        auto cells = cells_from_json(in.json);
        if (o.cell >= cells.size()) throw Error(ErrorCode::CellNotFound, "no cell " + std::to_string(o.cell) + " in the file");
        tau = C.index_of(cells[o.cell]);
    } else {
        if (o.cell >= C.size()) throw Error(ErrorCode::CellNotFound, "no cell " + std::to_string(o.cell));
        tau = o.cell;
    }
    auto star = star_fan(C, tau);
    auto fan = share(star.fan);
    Result r{weight_to_json(star_weight(op.cycle, star, fan))};
    r.json["point"] = io::rat_vector_json(star.point);
    return r;
}

inline Result cmd_refine(const Options& o) {
    auto a = load(o.files.at(0));
    if (a.kind == Kind::Cycle) {
        auto c = cycle_from_json(a.json);
        std::vector<AffineInequality> hs;
        for (const auto& h : o.hyperplanes) hs.push_back(parse_hyperplane(h, c.ambient_dim()));
        return {cycle_to_json(refine_cycle(c, hs))};
    }
    if (o.files.size() < 2) throw Error(ErrorCode::InvalidArgument, "refine needs a second fan or weight");
    auto b = load(o.files.at(1));
    auto fan_of = [](const Input& in) {
        if (in.kind == Kind::Fan) return fan_from_json(in.json).fan;
        if (in.kind == Kind::Weight) return resolve_fan(io::field(in.json, "fan"), in.base).fan;
        throw Error(ErrorCode::InvalidArgument, "refine takes fans or weights");
    };
    auto common = share(common_refinement(*fan_of(a), *fan_of(b)));
    if (a.kind == Kind::Weight) return {weight_to_json(refine_weight(weight_from_json(a.json, a.base), common))};
    return {fan_to_json(*common)};
}

inline Result cmd_psi(const Options& o) {
    if (o.n < 4 || o.n > 8) throw Error(ErrorCode::InvalidArgument, "psi supports 4 <= n <= 8");
    PsiCalculator calc(o.n);
    std::vector<std::vector<std::size_t>> rows;
    if (o.all) rows = index_multisets(o.n, o.n - 3);
    else rows.push_back(o.indices);
    Result r;
    r.json["n"] = o.n;
    r.json["entries"] = Json::array();
    for (const auto& ks : rows) {
        Json e{{"indices", ks}, {"degree", io::from_rational(calc.degree(ks))}};
        if (o.raw) e["raw_degree"] = io::from_integer(calc.raw_degree(ks));
        r.json["entries"].push_back(e);
    }
    return r;
}

inline void emit(const Json& j, const Options& o, std::ostream& out) {
    std::string text = j.dump(2) + "\n";
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.output);
    f << text;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact tropical intersection theory"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Seed for generic choices")->default_val(0);
    app.add_option("--output", o.output, "Write the result here instead of stdout");
    auto files = [&](CLI::App* s, std::size_t lo, std::size_t hi) {
        s->add_option("files", o.files, "Input JSON files")->required()->expected(int(lo), int(hi))->check(CLI::ExistingFile);
    };
    std::map<CLI::App*, Result (*)(const Options&)> handlers;
    auto* validate = app.add_subcommand("validate", "Check a fan, weight, complex, cycle or function");
    files(validate, 1, 1);
    handlers[validate] = cmd_validate;
    auto* cupc = app.add_subcommand("cup", "Cup product of two weights by fan displacement");
    files(cupc, 2, 2);
    handlers[cupc] = cmd_cup;
    auto* arc = app.add_subcommand("ar", "Product via the diagonal construction");
    files(arc, 2, 2);
    arc->add_flag("--check-equiv", o.check_equiv, "Also compute the displacement product and compare");
    handlers[arc] = cmd_ar;
    auto* stable = app.add_subcommand("stable", "Stable intersection of two cycles");
    files(stable, 2, 2);
    handlers[stable] = cmd_stable;
    auto* div = app.add_subcommand("divisor", "Weil divisor of a function on a weight, or of a Cartier divisor on a cycle");
    files(div, 2, 2);
    div->add_option("--convention", o.convention, "kappa or ar")->check(CLI::IsMember({"kappa", "ar"}));
    handlers[div] = cmd_divisor;
    auto* star = app.add_subcommand("star", "Star of a cycle or weight at a cell, as a weight on a fan");
    files(star, 1, 1);
    star->add_option("--cell", o.cell, "Cell index in the input file")->required();
    handlers[star] = cmd_star;
    auto* refine = app.add_subcommand("refine", "Common refinement of fans, or refinement of a cycle by hyperplanes");
    files(refine, 1, 2);
    refine->add_option("--hyperplane", o.hyperplanes, "a1,...,an:b for the hyperplane a.x = b");
    handlers[refine] = cmd_refine;
    auto* psi = app.add_subcommand("psi", "Degrees of psi class products on M_{0,n}");
    psi->add_option("n", o.n, "Number of markings")->required();
    psi->add_option("indices", o.indices, "Marker indices, n-3 of them");
    psi->add_flag("--all", o.all, "Tabulate every index multiset");
    psi->add_flag("--raw", o.raw, "Also print the unnormalized degrees");
    handlers[psi] = cmd_psi;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return ParseError;
    }
    try {
        auto* sub = app.get_subcommands().front();
        Result r = handlers.at(sub)(o);
        emit(r.json, o, out);
        return r.code;
    } catch (const Error& e) {
        Json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        err << e.what() << "\n";
        return e.code() == ErrorCode::Parse ? ParseError : Invalid;
    }
}

} // namespace tropint
