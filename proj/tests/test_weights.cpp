#include "tropical/minkowski_weight.hpp"
#include "catalog.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropical;
using namespace tropical::testing;

namespace {

MinkowskiWeight ray_weight(const FanPtr& f, const std::vector<std::pair<IntVector, long>>& entries) {
    MinkowskiWeight c(f, f->ambient_dim() - 1);
    for (const auto& [r, w] : entries) c.set(f->index_of(cone_from_rays({r}, f->ambient_dim())), w);
    return c;
}

MinkowskiWeight example_c1(const FanPtr& f) {
    return ray_weight(f, {{iv({1, 0}), 1}, {iv({0, 1}), 1}, {iv({-1, -1}), 1}});
}

MinkowskiWeight example_c2(const FanPtr& f) {
    return ray_weight(f, {{iv({1, 0}), 2}, {iv({-2, 1}), 1}, {iv({0, -1}), 1}});
}

} // namespace

TEST(Balancing, ExampleWeightIsBalanced) {
    auto f = share(delta2());
    EXPECT_TRUE(check_balancing(example_c2(f)).empty());
    EXPECT_TRUE(check_balancing(MinkowskiWeight(f, 1)).empty());
}

TEST(Balancing, ViolationReported) {
    auto f = share(quadrant_fan());
    auto c = ray_weight(f, {{iv({1, 0}), 1}, {iv({0, 1}), 1}});
    auto v = check_balancing(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(f->cone(v[0].tau).dim(), 0u);
    EXPECT_EQ(v[0].defect.size(), 2u);
    EXPECT_FALSE(is_zero(v[0].defect));
}

TEST(Balancing, WrongCodimensionRejected) {
    auto f = share(projective_plane());
    MinkowskiWeight c(f, 1);
    try {
        c.set(f->maximal_cones()[0], 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::WrongCodimension);
    }
}

TEST(UnitWeight, Examples) {
    auto line = share(line_fan());
    auto u = unit_weight(line);
    EXPECT_EQ(u.entries().size(), 2u);
    EXPECT_EQ(unit_weight(share(projective_plane())).entries().size(), 3u);
    auto ray = share(fan_validate(2, {cone_from_rays({iv({1, 0})}, 2)}));
    EXPECT_THROW(unit_weight(ray), Error);
}

TEST(Cup, ExampleDegreeIsThree) {
    auto f = share(common_refinement(delta1(), delta2()));
    auto c1 = refine_weight(example_c1(share(delta1())), f);
    auto c2 = refine_weight(example_c2(share(delta2())), f);
    CupTrace trace;
    auto p = cup(c1, c2, 0, &trace);
    EXPECT_EQ(degree(p), 3);
    for (const auto& [gamma, g] : trace.vectors) EXPECT_TRUE(verify_generic(*f, g));
}

TEST(Cup, ExampleDisplacementVectorIsGeneric) {
    auto f = share(common_refinement(delta1(), delta2()));
    auto c1 = refine_weight(example_c1(share(delta1())), f);
    auto c2 = refine_weight(example_c2(share(delta2())), f);
    auto zero = f->index_of(Cone::zero(2));
    auto p = displacement_problem(*f, weighted_cones_containing(c1, zero), weighted_cones_containing(c2, zero));
    std::vector<PairCertificate> cert;
    ASSERT_TRUE(certify(p, iv({2, 1}), &cert));
    // Evaluating the displacement rule at v = (2,1) by hand gives 1 + 2.
    Integer total = 0;
    for (const auto& pc : cert)
        if (pc.status == PairStatus::Transverse)
            total += displacement_multiplicity(span_lattice_basis(f->cone(pc.sigma1)),
                                               span_lattice_basis(f->cone(pc.sigma2)), 2) *
                     c1(pc.sigma1) * c2(pc.sigma2);
    EXPECT_EQ(total, 3);
    EXPECT_FALSE(certify(p, iv({0, 0}), nullptr));
}

TEST(Cup, UnconstrainedGammaAcceptsAnyVector) {
    auto f = share(projective_plane());
    auto u = unit_weight(f);
    auto g = pick_generic_vector(u, u, f->maximal_cones()[0], 3);
    EXPECT_TRUE(verify_generic(*f, g));
}

TEST(Cup, ZeroVectorNeverGenericOnLine) {
    auto f = share(line_fan());
    MinkowskiWeight point(f, 1);
    point.set(f->index_of(Cone::zero(1)), 1);
    auto u = unit_weight(f);
    auto zero = f->index_of(Cone::zero(1));
    auto p = displacement_problem(*f, weighted_cones_containing(u, zero), weighted_cones_containing(point, zero));
    EXPECT_FALSE(certify(p, iv({0}), nullptr));
    auto g = pick_generic_vector(p, 1, 0, zero);
    EXPECT_FALSE(is_zero(g.v));
}

TEST(Cup, UnitIsIdentityAndZeroAnnihilates) {
    std::mt19937_64 rng(21);
    for (const auto& fan : catalog()) {
        auto f = share(fan);
        auto u = unit_weight(f);
        for (std::size_t k = 0; k <= f->ambient_dim(); ++k) {
            auto c = random_balanced_weight(f, k, rng);
            EXPECT_EQ(cup(u, c), c);
            EXPECT_EQ(cup(c, u), c);
            EXPECT_TRUE(cup(MinkowskiWeight(f, 1), c).is_zero());
        }
    }
}

TEST(Cup, IncompleteOrUnbalancedRejected) {
    auto f = share(quadrant_fan());
    auto bad = ray_weight(f, {{iv({1, 0}), 1}});
    EXPECT_THROW(cup(bad, unit_weight(f)), Error);
    auto g = share(projective_plane());
    EXPECT_THROW(cup(unit_weight(f), unit_weight(g)), Error);
}

TEST(Cup, SeedIndependentCommutativeAssociative) {
    std::mt19937_64 rng(42);
    for (const auto& fan : catalog()) {
        auto f = share(fan);
        const std::size_t n = f->ambient_dim();
        for (int t = 0; t < 3; ++t) {
            auto a = random_balanced_weight(f, 1, rng);
            auto b = random_balanced_weight(f, n - 1, rng);
            auto ab = cup(a, b, 0);
            EXPECT_TRUE(is_balanced(ab));
            for (std::uint64_t s = 1; s < 5; ++s) EXPECT_EQ(cup(a, b, s), ab);
            EXPECT_EQ(cup(b, a, 7), ab);
            if (n == 3) {
                auto c = random_balanced_weight(f, 1, rng);
                EXPECT_EQ(cup(cup(a, c), c), cup(a, cup(c, c)));
            } else {
                auto c = random_balanced_weight(f, 1, rng);
                EXPECT_EQ(cup(cup(a, c), MinkowskiWeight(f, 0) + unit_weight(f)), cup(a, c));
            }
        }
    }
}

TEST(Cup, DegreeOfPointWeight) {
    auto f = share(projective_plane());
    MinkowskiWeight c(f, 2);
    EXPECT_EQ(degree(c), 0);
    c.set(f->index_of(Cone::zero(2)), 5);
    EXPECT_EQ(degree(c), 5);
    EXPECT_THROW(degree(unit_weight(f)), Error);
}

TEST(Cross, ExampleProduct) {
    auto f1 = share(delta1());
    auto f2 = share(delta2());
    auto x = cross(example_c1(f1), example_c2(f2));
    EXPECT_EQ(x.codim(), 2u);
    EXPECT_EQ(x.entries().size(), 9u);
    for (const auto& [s, w] : x.entries()) {
        const Cone& c = x.fan().cone(s);
        bool over_nu1 = false;
        for (const auto& r : c.rays())
            if (r == iv({0, 0, 1, 0})) over_nu1 = true;
        EXPECT_EQ(w, over_nu1 ? 2 : 1);
    }
    EXPECT_TRUE(is_balanced(x));
}

TEST(Cross, UnitAndZero) {
    auto f = share(line_fan());
    auto x = cross(unit_weight(f), unit_weight(f));
    EXPECT_EQ(x, unit_weight(x.fan_ptr()));
    EXPECT_TRUE(cross(unit_weight(f), MinkowskiWeight(f, 1)).is_zero());
}

TEST(RefineWeight, TrivialAndSplitting) {
    auto f = share(quadrant_fan());
    std::mt19937_64 rng(2);
    auto c = random_balanced_weight(f, 1, rng);
    EXPECT_EQ(refine_weight(c, f), c);
    auto fine = share(refine_by_hyperplanes(*f, {iv({1, -1})}));
    auto r = refine_weight(c, fine);
    EXPECT_EQ(r(fine->index_of(cone_from_rays({iv({1, 0})}, 2))), c(f->index_of(cone_from_rays({iv({1, 0})}, 2))));
    EXPECT_EQ(r(fine->index_of(cone_from_rays({iv({1, 1})}, 2))), 0);
    EXPECT_TRUE(is_balanced(r));
    auto not_fine = share(projective_plane());
    EXPECT_THROW(refine_weight(c, not_fine), Error);
}

TEST(RefineWeight, ExampleProductSubdivision) {
    auto f1 = share(delta1());
    auto f2 = share(delta2());
    auto x = cross(example_c1(f1), example_c2(f2));
    auto fine = share(refine_by_hyperplanes(x.fan(), {iv({-1, 0, 1, 0})}));
    auto r = refine_weight(x, fine);
    EXPECT_TRUE(is_balanced(r));
    EXPECT_TRUE(fine->find(cone_from_rays({iv({1, 0, 1, 0})}, 4)).has_value());
    // Each weighted piece inherits the weight of the product cone it lies in.
    std::size_t halves_over_rho1_nu1 = 0;
    for (const auto& [s, w] : r.entries()) {
        EXPECT_EQ(fine->cone(s).dim(), 2u);
        auto coarse = coarse_cone_of(x.fan(), *fine, s);
        EXPECT_EQ(w, x(coarse));
        if (x.fan().cone(coarse) == cone_from_rays({iv({1, 0, 0, 0}), iv({0, 0, 1, 0})}, 4)) {
            ++halves_over_rho1_nu1;
            EXPECT_EQ(w, 2);
        }
    }
    EXPECT_EQ(halves_over_rho1_nu1, 2u);
    EXPECT_GT(r.entries().size(), 9u);
}

TEST(RefineWeight, DegreePreserved) {
    std::mt19937_64 rng(8);
    for (const auto& fan : catalog()) {
        auto f = share(fan);
        auto fine = share(refine_by_hyperplanes(*f, {IntVector(f->ambient_dim(), Integer(1))}));
        auto a = random_balanced_weight(f, 1, rng);
        auto b = random_balanced_weight(f, f->ambient_dim() - 1, rng);
        EXPECT_EQ(degree(cup(refine_weight(a, fine), refine_weight(b, fine))), degree(cup(a, b)));
        auto top = random_balanced_weight(f, f->ambient_dim(), rng);
        EXPECT_EQ(degree(refine_weight(top, fine)), degree(top));
    }
}

TEST(Pushforward, ProjectionOfRay) {
    auto src = share(fan_validate(2, {cone_from_rays({iv({1, 2})}, 2), cone_from_rays({iv({-1, -2})}, 2)}));
    IntMatrix h(1, 2);
    h(0, 0) = 1;
    MinkowskiWeight c(src, 1);
    c.set(src->index_of(cone_from_rays({iv({1, 2})}, 2)), 1);
    c.set(src->index_of(cone_from_rays({iv({-1, -2})}, 2)), 1);
    auto line = share(line_fan());
    auto p = pushforward_weight(h, c, line);
    EXPECT_EQ(p(line->index_of(cone_from_rays({iv({1})}, 1))), 1);
    EXPECT_EQ(p(line->index_of(cone_from_rays({iv({-1})}, 1))), 1);
    EXPECT_TRUE(is_balanced(p));
}

TEST(Pushforward, CollapsingRayContributesNothing) {
    auto src = share(fan_validate(2, {cone_from_rays({iv({0, 1})}, 2)}));
    IntMatrix h(1, 2);
    h(0, 0) = 1;
    MinkowskiWeight c(src, 1);
    c.set(src->index_of(cone_from_rays({iv({0, 1})}, 2)), 1);
    EXPECT_TRUE(pushforward_weight(h, c, share(line_fan())).is_zero());
}

TEST(Pushforward, IdentityAndIndex) {
    auto f = share(projective_plane());
    std::mt19937_64 rng(4);
    auto c = random_balanced_weight(f, 1, rng);
    EXPECT_EQ(pushforward_weight(IntMatrix::identity(2), c, f), c);
    // Doubling map: every ray picks up index 2.
    IntMatrix h = IntMatrix::identity(2);
    h(0, 0) = 2;
    h(1, 1) = 2;
    auto p = pushforward_weight(h, c, f);
    for (const auto& [s, w] : c.entries()) EXPECT_EQ(p(s), 2 * w);
}

TEST(Pushforward, UnsupportedImageRejected) {
    auto src = share(fan_validate(2, {cone_from_rays({iv({1, 1})}, 2)}));
    MinkowskiWeight c(src, 1);
    c.set(src->index_of(cone_from_rays({iv({1, 1})}, 2)), 1);
    auto target = share(projective_plane());
    try {
        pushforward_weight(IntMatrix::identity(2), c, target);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ImageNotSupported);
    }
}

TEST(RandomWeights, AreBalanced) {
    std::mt19937_64 rng(5);
    for (const auto& fan : catalog()) {
        auto f = share(fan);
        for (std::size_t k = 0; k <= f->ambient_dim(); ++k)
            for (int t = 0; t < 3; ++t) EXPECT_TRUE(is_balanced(random_balanced_weight(f, k, rng)));
    }
}
