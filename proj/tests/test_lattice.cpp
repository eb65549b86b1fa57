#include "tropical/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tropical;

namespace {

IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.push_back(Integer(x));
    return v;
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<IntVector> r;
    for (auto row : rows) r.push_back(iv(row));
    return IntMatrix::from_rows(r, r.empty() ? 0 : r[0].size());
}

// Determinant by cofactor expansion; independent of the elimination code.
Integer det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Integer d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = a(i, k);
        Integer term = a(0, j) * det(minor);
        d += (j % 2 == 0) ? term : Integer(-term);
    }
    return d;
}

void expect_valid_snf(const IntMatrix& A) {
    auto d = smith_normal_form(A);
    EXPECT_EQ(d.U * A * d.V, d.S);
    EXPECT_EQ(abs(det(d.U)), 1);
    EXPECT_EQ(abs(det(d.V)), 1);
    EXPECT_EQ(d.V * d.V_inv, IntMatrix::identity(A.cols()));
    for (std::size_t i = 0; i < d.S.rows(); ++i)
        for (std::size_t j = 0; j < d.S.cols(); ++j)
            if (i != j) {
                EXPECT_EQ(d.S(i, j), 0);
            }
    for (std::size_t i = 0; i < d.rank; ++i) {
        EXPECT_GT(d.S(i, i), 0);
        if (i + 1 < d.rank) {
            EXPECT_EQ(d.S(i + 1, i + 1) % d.S(i, i), 0);
        }
    }
    for (std::size_t i = d.rank; i < std::min(A.rows(), A.cols()); ++i) EXPECT_EQ(d.S(i, i), 0);
}

} // namespace

TEST(Snf, Identity) {
    auto d = smith_normal_form(IntMatrix::identity(2));
    EXPECT_EQ(d.S, IntMatrix::identity(2));
    EXPECT_EQ(d.U, IntMatrix::identity(2));
    EXPECT_EQ(d.V, IntMatrix::identity(2));
}

TEST(Snf, DiagTwoThree) {
    auto A = mat({{2, 0}, {0, 3}});
    auto d = smith_normal_form(A);
    EXPECT_EQ(d.S, mat({{1, 0}, {0, 6}}));
    expect_valid_snf(A);
}

TEST(Snf, Zero) {
    auto d = smith_normal_form(IntMatrix(2, 2));
    EXPECT_EQ(d.S, IntMatrix(2, 2));
    EXPECT_EQ(d.rank, 0u);
}

TEST(Snf, RandomMatricesSatisfyInvariants) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-6, 6), size(1, 5);
    for (int t = 0; t < 200; ++t) {
        std::size_t m = size(rng), n = size(rng);
        IntMatrix A(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = dist(rng);
        expect_valid_snf(A);
    }
}

TEST(LatticeIndex, Examples) {
    EXPECT_EQ(*lattice_index({iv({1, 0}), iv({0, -1})}, 2), 1);
    EXPECT_EQ(*lattice_index({iv({-2, 1}), iv({0, 1})}, 2), 2);
    EXPECT_EQ(*lattice_index({iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}, 3), 1);
    EXPECT_FALSE(lattice_index({iv({1, 1}), iv({2, 2})}, 2).has_value());
}

TEST(LatticeIndex, InvariantUnderElementaryMoves) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int t = 0; t < 100; ++t) {
        std::vector<IntVector> g;
        for (int i = 0; i < 3; ++i) g.push_back(iv({dist(rng), dist(rng), dist(rng)}));
        auto base = lattice_index(g, 3);
        auto h = g;
        std::swap(h[0], h[2]);
        EXPECT_EQ(lattice_index(h, 3), base);
        h[1] = h[1] + Integer(dist(rng)) * h[0];
        EXPECT_EQ(lattice_index(h, 3), base);
        if (base) {
            EXPECT_EQ(abs(det(IntMatrix::from_rows(g, 3))), *base);
        }
    }
}

TEST(Primitive, Examples) {
    EXPECT_EQ(primitive(iv({2, 4})), iv({1, 2}));
    EXPECT_EQ(primitive(iv({1, 0})), iv({1, 0}));
    EXPECT_EQ(primitive(iv({-6, -9})), iv({-2, -3}));
    EXPECT_THROW(primitive(iv({0, 0})), Error);
}

TEST(Kernel, Examples) {
    EXPECT_EQ(integer_kernel(mat({{1, 1}})), std::vector<IntVector>{iv({1, -1})});
    EXPECT_TRUE(integer_kernel(IntMatrix::identity(3)).empty());
    EXPECT_EQ(integer_kernel(mat({{2, 4}})), std::vector<IntVector>{iv({2, -1})});
}

TEST(Kernel, RandomKernelsAreSaturated) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int t = 0; t < 100; ++t) {
        IntMatrix A(2, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) A(i, j) = dist(rng);
        auto K = integer_kernel(A);
        for (const auto& k : K) EXPECT_TRUE(is_zero(A.apply(k)));
        EXPECT_EQ(K.size() + rank_of({A.row(0), A.row(1)}, 4), 4u);
        if (!K.empty()) {
            EXPECT_EQ(saturation_index(K, 4), 1);
        }
    }
}

TEST(SolveInteger, FindsSolutionsOrReportsNone) {
    auto A = mat({{2, 0}, {0, 3}});
    EXPECT_EQ(*solve_integer(A, iv({4, 9})), iv({2, 3}));
    EXPECT_FALSE(solve_integer(A, iv({1, 0})).has_value());
}

TEST(QuotientMap, ProjectsAndLifts) {
    QuotientMap q({iv({0, 1})}, 2);
    EXPECT_EQ(q.quotient_dim(), 1u);
    EXPECT_TRUE(q.in_saturation(iv({0, 5})));
    auto p = q.project(iv({-2, 1}));
    EXPECT_EQ(abs(p[0]), 2);
    auto l = q.lift(iv({1}));
    EXPECT_EQ(q.project(l), iv({1}));

    QuotientMap s({iv({2, 2, 0})}, 3);
    EXPECT_EQ(s.saturation_basis().size(), 1u);
    EXPECT_EQ(saturation_index(s.saturation_basis(), 3), 1);
    EXPECT_TRUE(s.in_saturation(iv({1, 1, 0})));
    EXPECT_FALSE(s.in_saturation(iv({1, 0, 0})));
}

TEST(Subspace, CanonicalBasisAndProjection) {
    auto b = canonical_subspace_basis({iv({2, 2, 0}), iv({1, 1, 0}), iv({0, 3, 3})}, 3);
    EXPECT_EQ(b, (std::vector<IntVector>{iv({1, 0, -1}), iv({0, 1, 1})}));
    auto p = project_out(to_rational(iv({1, 0})), {iv({1, 1})});
    EXPECT_EQ(primitive_direction(p), iv({1, -1}));
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
    EXPECT_EQ(to_string(parse_rational("-5")), "-5");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
}
