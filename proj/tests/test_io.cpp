#include "tropical/io.hpp"
#include "catalog.hpp"
#include "cycle_catalog.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropical;
using namespace tropical::testing;

namespace {

const std::filesystem::path data_dir = TROPINT_DATA_DIR;

} // namespace

TEST(Io, RationalsAreStrings) {
    EXPECT_EQ(io::from_rational(Rational(-3, 6)), Json("-1/2"));
    EXPECT_EQ(io::from_rational(Rational(4)), Json("4"));
    EXPECT_EQ(io::to_rational(Json("6/4")), Rational(3, 2));
    EXPECT_EQ(io::to_rational(Json(7)), Rational(7));
    EXPECT_THROW(io::to_rational(Json("1/0")), Error);
    EXPECT_THROW(io::to_integer(Json("1/2")), Error);
    EXPECT_THROW(io::to_integer(Json(1.5)), Error);
}

TEST(Io, FanRoundTrip) {
    for (const auto& f : catalog()) {
        auto back = fan_from_json(fan_to_json(f));
        EXPECT_EQ(*back.fan, f);
    }
}

TEST(Io, FanFileIndexing) {
    // Rays listed in a different order than the canonical one.
    Json j = Json::parse(R"({"ambient_dim": 2, "rays": [[-1, -1], [2, 0], [0, 1]],
                             "maximal_cones": [[1, 2], [2, 0], [0, 1]]})");
    auto f = fan_from_json(j);
    EXPECT_EQ(*f.fan, projective_plane());
    EXPECT_EQ(f.fan->rays()[f.ray(1)], iv({1, 0}));
    EXPECT_EQ(f.fan->cone(f.cone({0})), cone_from_rays({iv({-1, -1})}, 2));
    EXPECT_THROW(f.ray(3), Error);
}

TEST(Io, MissingFieldIsParseError) {
    try {
        fan_from_json(Json::parse(R"({"ambient_dim": 2, "rays": []})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
    }
}

TEST(Io, InvalidFanIsNotParseError) {
    try {
        fan_from_json(read_json_file(data_dir / "bad_fan.json"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FanInvalid);
    }
}

TEST(Io, WeightRoundTrip) {
    std::mt19937_64 rng(3);
    for (const auto& fan : catalog()) {
        auto f = share(fan);
        for (std::size_t k = 0; k <= f->ambient_dim(); ++k) {
            auto c = random_balanced_weight(f, k, rng);
            auto j = weight_to_json(c);
            EXPECT_EQ(weight_from_json(j, std::filesystem::path{}), c);
        }
    }
}

TEST(Io, ExampleWeightsFromFiles) {
    auto c1 = weight_from_json(read_json_file(data_dir / "c1.json"), data_dir);
    auto c2 = weight_from_json(read_json_file(data_dir / "c2.json"), data_dir);
    EXPECT_EQ(c1.fan(), delta1());
    EXPECT_EQ(c2.fan(), delta2());
    EXPECT_TRUE(is_balanced(c1));
    EXPECT_TRUE(is_balanced(c2));
    EXPECT_EQ(c2(c2.fan().index_of(cone_from_rays({iv({1, 0})}, 2))), 2);
    auto bad = weight_from_json(read_json_file(data_dir / "unbalanced.json"), data_dir);
    EXPECT_EQ(check_balancing(bad).size(), 1u);
}

TEST(Io, FunctionFromRayValues) {
    auto fan = resolve_fan(Json("delta1.json"), data_dir);
    auto f = function_from_json(read_json_file(data_dir / "min_xy.json"), fan);
    EXPECT_EQ(f(iv({-1, -1})), -1);
    EXPECT_EQ(f(iv({3, 1})), 0);
    auto back = function_to_json(f);
    auto g = function_from_json(back, fan_from_json(back.at("fan")));
    EXPECT_EQ(g(iv({-2, -5})), f(iv({-2, -5})));
}

TEST(Io, CycleRoundTrip) {
    auto l = tropical_line({Rational(1, 2), Rational(-1, 3)});
    auto j = cycle_to_json(l);
    EXPECT_EQ(j["cells"][0]["vertices"][0][0], Json("1/2"));
    EXPECT_TRUE(cycles_equal(cycle_from_json(j), l));
    auto file = cycle_from_json(read_json_file(data_dir / "line.json"));
    EXPECT_TRUE(cycles_equal(file, tropical_line({Rational(0), Rational(0)})));
    auto z = TropicalCycle::zero(3, 1);
    EXPECT_TRUE(cycle_from_json(cycle_to_json(z)).is_zero());
}

TEST(Io, CycleWeightOnWrongDimension) {
    Json j = read_json_file(data_dir / "line_with_vertex.json");
    j["weights"].push_back({{"cell", 3}, {"weight", 1}});
    EXPECT_THROW(cycle_from_json(j), Error);
}

TEST(Io, CartierFormats) {
    auto cj = read_json_file(data_dir / "line_with_vertex.json");
    auto c = cycle_from_json(cj);
    auto charts = cartier_from_json(read_json_file(data_dir / "line_charts.json"), cj, c.complex());
    auto mins = cartier_from_json(read_json_file(data_dir / "min_0_x_y.json"), cj, c.complex());
    EXPECT_TRUE(cycles_equal(cartier_weil(c, charts, Convention::Kappa), cartier_weil(c, mins, Convention::Kappa)));
}
