#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ltwo/numerics.hpp"
#include "ltwo/random.hpp"
#include "test_util.hpp"

using namespace ltwo;
using ltwo::testing::hermitian_2x2_eigenvalues;
using ltwo::testing::max_diff;

TEST(Svd, IdentityIsItsOwnDecomposition) {
    const auto s = svd(Matrix::identity(3));
    ASSERT_EQ(s.rank(), 3u);
    for (double x : s.sigma) {
        EXPECT_DOUBLE_EQ(x, 1.0);
    }
    EXPECT_EQ(s.u, Matrix::identity(3));
    EXPECT_EQ(s.v, Matrix::identity(3));
}

TEST(Svd, NilpotentTwoByTwo) {
    // [[0,2],[0,0]] = 2 e1 e2^dagger
    const Matrix a = Matrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    const auto s = svd(a);
    ASSERT_EQ(s.rank(), 1u);
    EXPECT_NEAR(s.sigma[0], 2.0, 1e-15);
    EXPECT_NEAR(std::abs(s.u(0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.u(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.v(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.v(1, 0)), 1.0, 1e-15);
    EXPECT_LE(max_diff(s.reconstruct(), a), 1e-15);
}

TEST(Svd, CollapsingMapMatchesEigenvaluesOfGram) {
    const Matrix g = Matrix::from_rows({{1.0, 1.0}, {0.0, 0.0}});
    const auto [lo, hi] = hermitian_2x2_eigenvalues(g.adjoint() * g);
    const auto s = svd(g);
    ASSERT_EQ(s.rank(), 1u);
    EXPECT_NEAR(s.sigma[0], std::sqrt(hi), 1e-14);
    EXPECT_NEAR(s.sigma[0], std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(lo, 0.0, 1e-15);
}

TEST(Svd, RandomTwoByTwoAgainstCharacteristicPolynomial) {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const Matrix a = random_matrix(rng, 2, 2);
        const auto [lo, hi] = hermitian_2x2_eigenvalues(a.adjoint() * a);
        const auto s = singular_values(a);
        ASSERT_EQ(s.size(), 2u);
        EXPECT_NEAR(s[0], std::sqrt(hi), 1e-12);
        EXPECT_NEAR(s[1], std::sqrt(std::max(lo, 0.0)), 1e-7);
    }
}

TEST(Svd, WideMatricesUseTheAdjoint) {
    const Matrix row = Matrix::from_rows({{1.0, 2.0, 3.0}});
    const auto s = svd(row);
    ASSERT_EQ(s.rank(), 1u);
    EXPECT_NEAR(s.sigma[0], std::sqrt(14.0), 1e-14);
    EXPECT_EQ(s.u.rows(), 1u);
    EXPECT_EQ(s.v.rows(), 3u);
    EXPECT_LE(max_diff(s.reconstruct(), row), 1e-14);
}

TEST(Svd, EmptyAndZeroMatrices) {
    const auto e = svd(Matrix(0, 3));
    EXPECT_EQ(e.rank(), 0u);
    EXPECT_EQ(e.v.rows(), 3u);
    EXPECT_EQ(svd(Matrix(2, 2)).rank(), 0u);
    EXPECT_EQ(operator_norm(Matrix(0, 0)), 0.0);
}

TEST(Svd, SmallSingularValuesAreTruncated) {
    const Matrix a = Matrix::diagonal({1.0, 1e-14});
    EXPECT_EQ(svd(a).rank(), 1u);
    EXPECT_EQ(svd(a, 1e-15).rank(), 2u);
}

TEST(Svd, IsDeterministic) {
    Rng rng(5);
    const Matrix a = random_matrix(rng, 7, 5);
    const auto s1 = svd(a);
    const auto s2 = svd(a);
    EXPECT_EQ(s1.u, s2.u);
    EXPECT_EQ(s1.v, s2.v);
    EXPECT_EQ(s1.sigma, s2.sigma);
}

TEST(Svd, RandomReconstructionAndOrthonormality) {
    Rng rng(2024);
    for (int k = 0; k < 300; ++k) {
        const std::size_t m = uniform_size(rng, 1, 16);
        const std::size_t n = uniform_size(rng, 1, 16);
        const Matrix a = k % 3 == 0 ? random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)))
                                    : random_matrix(rng, m, n);
        const auto s = svd(a);
        const double scale = std::max(1.0, operator_norm(a));
        EXPECT_LE(operator_norm(a - s.reconstruct()), 1e-9 * scale);
        EXPECT_LE(operator_norm(s.u.adjoint() * s.u - Matrix::identity(s.rank())), 1e-9);
        EXPECT_LE(operator_norm(s.v.adjoint() * s.v - Matrix::identity(s.rank())), 1e-9);
        for (std::size_t i = 1; i < s.sigma.size(); ++i) {
            EXPECT_GE(s.sigma[i - 1], s.sigma[i]);
        }
    }
}

TEST(Svd, RankIsStableUnderAdjointAndGram) {
    Rng rng(77);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = uniform_size(rng, 1, 8);
        const std::size_t n = uniform_size(rng, 1, 8);
        const Matrix a = random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)));
        EXPECT_EQ(rank(a), rank(a.adjoint()));
        EXPECT_EQ(rank(a), rank(a.adjoint() * a));
    }
}

TEST(NullSpace, IdentityHasTrivialKernel) { EXPECT_EQ(null_space(Matrix::identity(4)).cols(), 0u); }

TEST(NullSpace, ZeroMatrixKernelIsEverything) {
    const Matrix k = null_space(Matrix(2, 2));
    EXPECT_EQ(k.cols(), 2u);
    EXPECT_LE(operator_norm(k.adjoint() * k - Matrix::identity(2)), 1e-15);
}

TEST(NullSpace, DifferenceOfTheTwoSingletonInjections) {
    // l2{(0,a)} - l2{(1,a)} = (1 -1); kernel spanned by (1,1)/sqrt 2.
    const Matrix d = Matrix::from_rows({{1.0, -1.0}});
    const Matrix k = null_space(d);
    ASSERT_EQ(k.cols(), 1u);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(k(0, 0)), h, 1e-15);
    EXPECT_NEAR(std::abs(k(1, 0)), h, 1e-15);
    EXPECT_NEAR(std::abs(k(0, 0) - k(1, 0)), 0.0, 1e-15);
}

TEST(NullSpace, RandomKernelsAreAnnihilatedAndOrthonormal) {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = uniform_size(rng, 1, 8);
        const std::size_t n = uniform_size(rng, 1, 8);
        const std::size_t r = uniform_size(rng, 0, std::min(m, n));
        const Matrix a = random_low_rank_matrix(rng, m, n, r);
        const Matrix k = null_space(a);
        EXPECT_EQ(k.cols(), n - rank(a));
        EXPECT_LE(operator_norm(a * k), 1e-10 * std::max(1.0, operator_norm(a)));
        EXPECT_LE(operator_norm(k.adjoint() * k - Matrix::identity(k.cols())), 1e-12);
    }
}

TEST(OperatorNorm, RowOfIntegersIsEuclideanLength) {
    const Matrix row = Matrix::from_rows({{1.0, 2.0, 3.0}});
    EXPECT_NEAR(operator_norm(row), std::sqrt(1.0 + 4.0 + 9.0), 1e-14);
}

TEST(OperatorNorm, UnitaryHasNormOne) {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        EXPECT_NEAR(operator_norm(random_unitary(rng, 6)), 1.0, 1e-9);
    }
}

TEST(OperatorNorm, HarmonicDiagonalHasNormOne) {
    EXPECT_NEAR(operator_norm(Matrix::diagonal({1.0, 0.5, 1.0 / 3.0, 0.25})), 1.0, 1e-15);
}

TEST(OperatorNorm, IsSubmultiplicative) {
    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = uniform_size(rng, 1, 6);
        const std::size_t n = uniform_size(rng, 1, 6);
        const std::size_t p = uniform_size(rng, 1, 6);
        const Matrix a = random_matrix(rng, m, n);
        const Matrix b = random_matrix(rng, n, p);
        EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) + 1e-9);
    }
}

TEST(CompleteOrthonormal, ExtendsToUnitaryAndKeepsPrefix) {
    Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = uniform_size(rng, 1, 8);
        const std::size_t r = uniform_size(rng, 0, n);
        const Matrix q = random_unitary(rng, n).columns(0, r);
        const Matrix full = complete_orthonormal(q);
        EXPECT_LE(operator_norm(full.adjoint() * full - Matrix::identity(n)), 1e-13);
        EXPECT_EQ(full.columns(0, r), q);
    }
}

TEST(CompleteOrthonormal, UsesStandardBasisInIndexOrder) {
    const Matrix e2 = Matrix::from_rows({{0.0}, {1.0}, {0.0}});
    const Matrix full = complete_orthonormal(e2);
    EXPECT_EQ(full, Matrix::from_rows({{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}));
}

TEST(Matrix, RejectsNonFiniteEntriesAndBadShapes) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(Matrix(1, 1, {Complex(nan, 0.0)}), Error);
    EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), Error);
    EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), Error);
}

TEST(Matrix, ApproxEqualIsScaleAware) {
    const Matrix a = Matrix::diagonal({1e6, 1e6});
    const Matrix b = Matrix::diagonal({1e6 + 1e-4, 1e6});
    EXPECT_TRUE(approx_equal(a, b, 1e-9));
    EXPECT_FALSE(approx_equal(Matrix::diagonal({0.0}), Matrix::diagonal({1e-8}), 1e-9));
}

TEST(Svd, OverflowIsANumericalFailure) {
    const Matrix a = Matrix::from_rows({{1e308, 1e308}, {1e308, -1e308}});
    try {
        svd(a);
        FAIL() << "expected a numerical failure";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::numerical_failure);
    }
}
