#include "tropical/fan.hpp"
#include "catalog.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropical;
using namespace tropical::testing;

TEST(Fan, ProjectivePlaneHasSevenCones) {
    auto f = projective_plane();
    EXPECT_EQ(f.size(), 7u);
    EXPECT_EQ(f.rays().size(), 3u);
    EXPECT_EQ(f.maximal_cones().size(), 3u);
    EXPECT_TRUE(fan_is_complete(f));
    EXPECT_TRUE(fan_is_unimodular(f));
}

TEST(Fan, OverlappingInteriorsRejected) {
    std::vector<Cone> cones{cone_from_rays({iv({1, 0}), iv({0, 1})}, 2), cone_from_rays({iv({1, 2}), iv({1, 0})}, 2)};
    try {
        fan_validate(2, cones);
        FAIL() << "expected FAN_INVALID";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FanInvalid);
    }
}

TEST(Fan, SingleRay) {
    auto f = fan_validate(2, {cone_from_rays({iv({1, 1})}, 2)});
    EXPECT_EQ(f.size(), 2u);
    EXPECT_FALSE(fan_is_complete(f));
}

TEST(Fan, Completeness) {
    EXPECT_TRUE(fan_is_complete(line_fan()));
    auto quadrant = fan_validate(2, {cone_from_rays({iv({1, 0}), iv({0, 1})}, 2)});
    EXPECT_FALSE(fan_is_complete(quadrant));
    for (const auto& f : catalog()) EXPECT_TRUE(fan_is_complete(f));
}

TEST(Fan, CompletenessAgreesWithSampling) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> dist(-50, 50);
    auto half = fan_validate(2, {cone_from_rays({iv({1, 0}), iv({0, 1})}, 2),
                                 cone_from_rays({iv({0, 1}), iv({-1, 0})}, 2)});
    std::vector<Fan> fans = catalog();
    fans.push_back(half);
    for (const auto& f : fans) {
        bool all_in = true;
        for (int t = 0; t < 1000; ++t) {
            IntVector x;
            for (std::size_t i = 0; i < f.ambient_dim(); ++i) x.push_back(dist(rng));
            if (!f.locate(x)) all_in = false;
        }
        EXPECT_EQ(all_in, fan_is_complete(f));
    }
}

TEST(Fan, ProductOfLines) {
    auto p = product_fan(line_fan(), line_fan());
    EXPECT_EQ(p.maximal_cones().size(), 4u);
    EXPECT_TRUE(fan_is_complete(p));
    auto z = Fan::from_cones(0, {Cone::zero(0)});
    auto q = product_fan(projective_plane(), z);
    EXPECT_EQ(q.size(), projective_plane().size());
}

TEST(Fan, ProductOfExampleFans) {
    auto p = product_fan(delta1(), delta2());
    EXPECT_EQ(p.cones_of_dim(2).size(), 9u + 3u + 3u);
    EXPECT_EQ(p.maximal_cones().size(), 9u);
    EXPECT_EQ(p.cones_of_dim(4).size(), 9u);
}

TEST(Fan, RefineQuadrantsByDiagonal) {
    auto quadrants = product_fan(line_fan(), line_fan());
    auto r = refine_by_hyperplanes(quadrants, {iv({1, -1})});
    EXPECT_EQ(r.maximal_cones().size(), 6u);
    EXPECT_TRUE(r.find(cone_from_rays({iv({1, 1})}, 2)).has_value());
    EXPECT_TRUE(r.find(cone_from_rays({iv({-1, -1})}, 2)).has_value());
    EXPECT_TRUE(fan_is_complete(r));
    EXPECT_TRUE(fan_refines(r, quadrants));
}

TEST(Fan, RefineExampleProductAddsOmegaRays) {
    auto p = product_fan(delta1(), delta2());
    auto r = refine_by_hyperplanes(p, {iv({-1, 0, 1, 0})});
    EXPECT_TRUE(r.find(cone_from_rays({iv({1, 0, 1, 0})}, 4)).has_value());
    EXPECT_TRUE(r.find(cone_from_rays({iv({-2, -2, -2, 1})}, 4)).has_value());
    EXPECT_TRUE(fan_refines(r, p));
    EXPECT_TRUE(fan_is_complete(r));
    for (auto m : r.maximal_cones()) {
        const auto& c = r.cone(m);
        IntVector x = c.relative_interior_point();
        EXPECT_NE(x[2] - x[0], 0);
    }
}

TEST(Fan, RefineByHyperplaneContainingSupport) {
    auto ray = fan_validate(2, {cone_from_rays({iv({1, 0})}, 2)});
    EXPECT_EQ(refine_by_hyperplanes(ray, {iv({0, 1})}), ray);
}

TEST(Fan, CommonRefinement) {
    auto f = projective_plane();
    EXPECT_EQ(common_refinement(f, f), f);
    EXPECT_EQ(common_refinement(line_fan(), line_fan()), line_fan());
    auto r = common_refinement(delta1(), delta2());
    EXPECT_EQ(r.rays().size(), 5u);
    EXPECT_EQ(r.maximal_cones().size(), 5u);
    EXPECT_TRUE(fan_refines(r, delta1()));
    EXPECT_TRUE(fan_refines(r, delta2()));
    EXPECT_TRUE(fan_is_complete(r));
}

TEST(Fan, CommonRefinementSupportMismatch) {
    auto quadrant = fan_validate(2, {cone_from_rays({iv({1, 0}), iv({0, 1})}, 2)});
    try {
        common_refinement(projective_plane(), quadrant);
        FAIL() << "expected SUPPORT_MISMATCH";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SupportMismatch);
    }
}

TEST(Fan, RefinementsKeepSupportAndValidity) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dist(-2, 2);
    for (const auto& f : catalog()) {
        IntVector a;
        for (std::size_t i = 0; i < f.ambient_dim(); ++i) a.push_back(dist(rng));
        if (is_zero(a)) continue;
        auto r = refine_by_hyperplanes(f, {a});
        std::vector<Cone> maxi;
        for (auto m : r.maximal_cones()) maxi.push_back(r.cone(m));
        EXPECT_NO_THROW(fan_validate(f.ambient_dim(), maxi));
        EXPECT_TRUE(fan_is_complete(r));
        EXPECT_TRUE(fan_refines(r, f));
        // Every cone of the refinement sits in exactly one minimal cone of f.
        for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NO_THROW(coarse_cone_of(f, r, i));
    }
}

TEST(Fan, IncidenceIsConsistent) {
    for (const auto& f : catalog()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (auto j : f.facets(i)) {
                EXPECT_EQ(f.cone(j).dim() + 1, f.cone(i).dim());
                EXPECT_TRUE(f.cone(j).is_face_of(f.cone(i)));
            }
            EXPECT_EQ(f.locate(f.cone(i).relative_interior_point()), i);
        }
    }
}
