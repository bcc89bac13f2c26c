#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "ltwo/hilb.hpp"
#include "ltwo/random.hpp"
#include "test_util.hpp"

using namespace ltwo;
using ltwo::testing::hermitian_2x2_eigenvalues;
using ltwo::testing::max_diff;

namespace {

Matrix basis(std::size_t n, std::size_t k) {
    Matrix e(n, 1);
    e(k, 0) = 1.0;
    return e;
}

Matrix random_partial_isometry(Rng& rng, std::size_t m, std::size_t n, std::size_t r) {
    return random_unitary(rng, m).columns(0, r) * random_unitary(rng, n).columns(0, r).adjoint();
}

} // namespace

TEST(Kron, BasisPairIndexing) {
    // e_x (x) e_y lands at x * dim_y + y.
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            EXPECT_EQ(kron(basis(2, x), basis(3, y)), basis(6, x * 3 + y));
        }
    }
}

TEST(Kron, MixedProductAndAdjoint) {
    Rng rng(1);
    const Matrix a = random_matrix(rng, 2, 3);
    const Matrix b = random_matrix(rng, 3, 2);
    const Matrix c = random_matrix(rng, 3, 2);
    const Matrix d = random_matrix(rng, 2, 2);
    EXPECT_LE(max_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-13);
    EXPECT_LE(max_diff(kron(a, b).adjoint(), kron(a.adjoint(), b.adjoint())), 0.0);
}

TEST(DirectSum, ProjectionsAndInjections) {
    const std::array<std::size_t, 3> dims{2, 0, 3};
    for (std::size_t i = 0; i < dims.size(); ++i) {
        for (std::size_t j = 0; j < dims.size(); ++j) {
            const Matrix pk = projection(dims, i) * injection(dims, j);
            EXPECT_EQ(pk, i == j ? Matrix::identity(dims[i]) : Matrix(dims[i], dims[j]));
        }
    }
    Matrix sum(5, 5);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        sum = sum + injection(dims, i) * projection(dims, i);
    }
    EXPECT_EQ(sum, Matrix::identity(5));
    EXPECT_THROW(projection(dims, 3), Error);
}

TEST(DirectSum, CotupleRestrictsToComponents) {
    Rng rng(2);
    const std::array<Matrix, 2> parts{random_matrix(rng, 3, 2), random_matrix(rng, 3, 1)};
    const std::array<std::size_t, 2> dims{2, 1};
    const Matrix c = cotuple(parts);
    EXPECT_LE(max_diff(c * injection(dims, 0), parts[0]), 0.0);
    EXPECT_LE(max_diff(c * injection(dims, 1), parts[1]), 0.0);
    const Matrix block = dirsum(parts[0], parts[1]);
    EXPECT_EQ(block.rows(), 6u);
    EXPECT_EQ(block.cols(), 3u);
}

TEST(Equalizer, OfTheTwoSingletonInjectionsIsOneDimensional) {
    const Matrix f = Matrix::from_rows({{1.0, 0.0}});
    const Matrix g = Matrix::from_rows({{0.0, 1.0}});
    const Matrix e = equalizer(f, g);
    ASSERT_EQ(e.cols(), 1u);
    EXPECT_LE(operator_norm(f * e - g * e), 1e-15);
}

TEST(Equalizer, IsUniversal) {
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const std::size_t m = uniform_size(rng, 1, 5);
        const std::size_t n = uniform_size(rng, 1, 5);
        const Matrix a = random_matrix(rng, m, n);
        const Matrix b = a + random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)));
        const Matrix e = equalizer(a, b);
        EXPECT_LE(operator_norm(a * e - b * e), 1e-10);
        // Any h with a h = b h factors as e (e^dagger h).
        const Matrix h = e * random_matrix(rng, e.cols(), 2);
        EXPECT_LE(operator_norm(e * (e.adjoint() * h) - h), 1e-10);
    }
    EXPECT_THROW(equalizer(Matrix(2, 2), Matrix(2, 3)), Error);
}

TEST(Classify, StandardExamples) {
    const auto id = classify(Matrix::identity(2));
    EXPECT_TRUE(id.is_unitary && id.is_isometry && id.is_partial_isometry);
    EXPECT_TRUE(id.is_projection && id.is_positive_definite);

    const auto shift = classify(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    EXPECT_TRUE(shift.is_partial_isometry);
    EXPECT_FALSE(shift.is_isometry);
    EXPECT_FALSE(shift.is_self_adjoint);

    const auto two = classify(Matrix::diagonal({2.0, 1.0}));
    EXPECT_FALSE(two.is_partial_isometry);
    EXPECT_TRUE(two.is_positive_definite);
    EXPECT_NEAR(two.min_eigenvalue, 1.0, 1e-12);

    const auto reflection = classify(Matrix::diagonal({1.0, -1.0}));
    EXPECT_TRUE(reflection.is_unitary && reflection.is_self_adjoint);
    EXPECT_FALSE(reflection.is_nonnegative);
    EXPECT_FALSE(reflection.is_projection);

    const auto column = classify(Matrix::from_rows({{1.0}, {0.0}}));
    EXPECT_TRUE(column.is_isometry);
    EXPECT_FALSE(column.is_unitary);

    const auto p = classify(Matrix::diagonal({1.0, 0.0}));
    EXPECT_TRUE(p.is_projection && p.is_nonnegative && p.is_partial_isometry);
    EXPECT_FALSE(p.is_positive_definite);
}

TEST(Classify, FlagsAreNested) {
    Rng rng(4);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = uniform_size(rng, 1, 5);
        const std::size_t r = uniform_size(rng, 0, n);
        const Matrix a = k % 2 == 0 ? random_partial_isometry(rng, n, n, r) : random_matrix(rng, n, n);
        const auto c = classify(a);
        EXPECT_TRUE(!c.is_unitary || c.is_isometry);
        EXPECT_TRUE(!c.is_isometry || c.is_partial_isometry);
        EXPECT_TRUE(!c.is_positive_definite || c.is_nonnegative);
        EXPECT_TRUE(!c.is_nonnegative || c.is_self_adjoint);
        if (k % 2 == 0) {
            EXPECT_TRUE(c.is_partial_isometry);
            EXPECT_EQ(c.is_unitary, r == n);
        }
    }
}

TEST(Classify, MinEigenvalueMatchesCharacteristicPolynomial) {
    Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        const Matrix a = random_matrix(rng, 2, 2);
        const Matrix h = 0.5 * (a + a.adjoint());
        EXPECT_NEAR(min_eigenvalue_hermitian(h), hermitian_2x2_eigenvalues(h).first, 1e-12);
    }
}

TEST(Classify, RotatedProjectionCompositeAtQuarterTurn) {
    // P_{e1} after the rotation by pi/4 has norm sin(pi/4); not a partial isometry.
    const double t = std::numbers::pi / 4.0;
    const Matrix rot = Matrix::from_rows({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}});
    const Matrix p = Matrix::diagonal({1.0, 0.0});
    const Matrix comp = p * rot * p;
    EXPECT_NEAR(operator_norm(comp), std::sin(t), 1e-15);
    EXPECT_FALSE(classify(comp).is_partial_isometry);
}

TEST(Order, ProjectionBelowIdentity) {
    const Matrix p = Matrix::diagonal({1.0, 0.0});
    EXPECT_TRUE(leq(p, Matrix::identity(2)));
    EXPECT_FALSE(leq(Matrix::identity(2), p));
    EXPECT_TRUE(leq(Matrix(2, 2), p));
    EXPECT_FALSE(leq(Matrix::diagonal({0.0, 1.0}), p));
}

TEST(Order, RestrictionsOfPartialIsometriesAreBelow) {
    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = uniform_size(rng, 1, 5);
        const std::size_t n = uniform_size(rng, 1, 5);
        const std::size_t r = uniform_size(rng, 0, std::min(m, n));
        const auto vv = random_unitary(rng, n);
        const Matrix b = random_unitary(rng, m).columns(0, r) * vv.columns(0, r).adjoint();
        const std::size_t s = uniform_size(rng, 0, r);
        const Matrix q = projector(vv.columns(0, s)); // inside the support of b
        const Matrix a = b * q;
        EXPECT_TRUE(leq(a, b));
        EXPECT_LE(operator_norm(b * a.adjoint() * a - a), 1e-12);
        if (s < r) {
            EXPECT_FALSE(leq(b, a));
        }
    }
}

TEST(Order, CompositionIsNotMonotone) {
    // a' <= a and b' <= b, yet b' a' is not below b a.
    const double h = 1.0 / std::sqrt(2.0);
    const Matrix v = Matrix::from_rows({{h}, {h}});
    const Matrix pv = v * v.adjoint();
    const Matrix pe2 = Matrix::diagonal({0.0, 1.0});
    const Matrix a = Matrix::identity(2);
    ASSERT_TRUE(leq(pv, a));
    ASSERT_TRUE(leq(pe2, pe2));
    EXPECT_FALSE(leq(pe2 * pv, pe2 * a));
}

TEST(Order, MaximumOfDirectedFamily) {
    const std::array<Matrix, 3> chain{Matrix::diagonal({1.0, 0.0, 0.0}), Matrix::diagonal({1.0, 1.0, 0.0}),
                                      Matrix::identity(3)};
    EXPECT_EQ(max_of_directed(chain), Matrix::identity(3));
    const std::array<Matrix, 2> split{Matrix::diagonal({1.0, 0.0}), Matrix::diagonal({0.0, 1.0})};
    try {
        max_of_directed(split);
        FAIL() << "expected a directedness error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::directedness);
    }
}

TEST(PositiveInverse, InvertsPositiveDefinite) {
    Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = uniform_size(rng, 1, 6);
        const Matrix b = random_matrix(rng, n, n);
        const Matrix p = b.adjoint() * b + Matrix::identity(n);
        EXPECT_LE(operator_norm(positive_inverse(p) * p - Matrix::identity(n)), 1e-11);
    }
    try {
        positive_inverse(Matrix::diagonal({1.0, 0.0}));
        FAIL() << "expected a precondition error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::precondition);
    }
}
