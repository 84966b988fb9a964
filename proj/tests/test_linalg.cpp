#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "opscale/linalg.hpp"
#include "oracles.hpp"

using namespace opscale;

namespace {

ComplexMatrix fixture_hermitian_6() {
    ComplexMatrix a(6, 6);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k)
            a(j, k) = complex(std::cos(j + 2 * k + 1) + std::cos(k + 2 * j + 1),
                              std::sin(j * k + j) - std::sin(j * k + k));
    return hermitian_part(a);
}

}  // namespace

TEST(Matmul, IdentityAndDiagonal) {
    const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), a), a);
    const ComplexMatrix twice = complex(2.0) * ComplexMatrix::identity(2);
    const ComplexMatrix half = complex(0.5) * ComplexMatrix::identity(2);
    EXPECT_EQ(matmul(twice, half), ComplexMatrix::identity(2));
}

TEST(Matmul, MatchesTripleLoop) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 3u, 4u, 9u}) {
        const auto a = oracle::random_matrix(rng, n, n + 1);
        const auto b = oracle::random_matrix(rng, n + 1, n);
        EXPECT_LT(max_abs_diff(matmul(a, b), oracle::matmul(a, b)), 1e-13);
    }
}

TEST(Matmul, Associative) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = oracle::random_matrix(rng, 7, 7);
        const auto b = oracle::random_matrix(rng, 7, 7);
        const auto c = oracle::random_matrix(rng, 7, 7);
        const auto left = matmul(matmul(a, b), c);
        const auto right = matmul(a, matmul(b, c));
        EXPECT_LT(max_abs_diff(left, right), 1e-10 * (1.0 + max_abs(left)));
    }
}

TEST(Matmul, ShapeMismatchThrows) {
    EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), dimension_error);
    EXPECT_THROW(matvec(ComplexMatrix(2, 3), ComplexVector(2)), dimension_error);
}

TEST(Adjoint, Examples) {
    const ComplexMatrix d{{1.0, 0.0}, {0.0, 2.0}};
    EXPECT_EQ(adjoint(d), d);
    const ComplexMatrix a{{0.0, complex(0, 1)}, {0.0, 0.0}};
    const ComplexMatrix expected{{0.0, 0.0}, {complex(0, -1), 0.0}};
    EXPECT_EQ(adjoint(a), expected);
}

TEST(Adjoint, IsInvolution) {
    std::mt19937_64 rng(13);
    const auto a = oracle::random_matrix(rng, 5, 3);
    EXPECT_EQ(adjoint(adjoint(a)), a);
}

TEST(Inner, ConjugatesSecondArgument) {
    const ComplexVector x{complex(0, 1), 1.0};
    const ComplexVector y{1.0, complex(0, 1)};
    EXPECT_EQ(inner(x, y), complex(0, 1) + complex(0, -1));
    EXPECT_DOUBLE_EQ(inner(x, x).real(), 2.0);
}

TEST(HermitianEig, DiagonalIsSortedPermutation) {
    const std::vector<double> diag{3.0, 1.0, 2.0};
    const auto eig = hermitian_eig(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(eig.eigenvalues, (std::vector<double>{1.0, 2.0, 3.0}));
    const std::size_t expected_row[] = {1, 2, 0};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_NEAR(std::abs(eig.eigenvectors(i, k)), i == expected_row[k] ? 1.0 : 0.0, 1e-15);
}

TEST(HermitianEig, PauliX) {
    const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    const auto eig = hermitian_eig(x);
    EXPECT_NEAR(eig.eigenvalues[0], -1.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues[1], 1.0, 1e-14);
    const auto v = eig.eigenvector(1);
    EXPECT_NEAR(std::abs(v[0]), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(std::abs(v[0] - v[1]), 0.0, 1e-14);
}

TEST(HermitianEig, SixBySixFixture) {
    const double expected[] = {-5.021950563699463, -2.833523036439156, -0.2578855696581941,
                               0.25405215372055745, 2.381153135179081,  4.980707303693557};
    const auto eig = hermitian_eig(fixture_hermitian_6());
    ASSERT_EQ(eig.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(eig.eigenvalues[k], expected[k], 1e-8);
}

TEST(HermitianEig, ReconstructsAndIsOrthonormal) {
    std::mt19937_64 rng(14);
    for (std::size_t n : {1u, 2u, 5u, 20u}) {
        const auto a = oracle::random_hermitian(rng, n);
        const auto eig = hermitian_eig(a);
        EXPECT_LT(unitarity_residual(eig.eigenvectors), 1e-10);
        ComplexMatrix lambda(n, n);
        for (std::size_t k = 0; k < n; ++k) lambda(k, k) = eig.eigenvalues[k];
        const auto rebuilt = oracle::matmul(oracle::matmul(eig.eigenvectors, lambda), adjoint(eig.eigenvectors));
        EXPECT_LT(max_abs_diff(rebuilt, a), 1e-10);
        EXPECT_TRUE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    }
}

TEST(HermitianEig, TraceAndDeterminant) {
    std::mt19937_64 rng(15);
    for (std::size_t n : {2u, 3u, 4u}) {
        const auto a = oracle::random_hermitian(rng, n);
        const auto eig = hermitian_eig(a);
        double sum = 0.0, prod = 1.0;
        for (double l : eig.eigenvalues) {
            sum += l;
            prod *= l;
        }
        EXPECT_NEAR(sum, trace(a).real(), 1e-10);
        const complex det = oracle::determinant(a);
        EXPECT_NEAR(prod, det.real(), 1e-10);
        EXPECT_NEAR(det.imag(), 0.0, 1e-12);
    }
}

TEST(HermitianEig, RejectsBadInput) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), dimension_error);
    const ComplexMatrix skew{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_THROW(hermitian_eig(skew), std::invalid_argument);
    EXPECT_THROW(hermitian_eig(ComplexMatrix::identity(2), 0.0), std::invalid_argument);
    EXPECT_THROW(hermitian_eig(ComplexMatrix::identity(2), -1.0), std::invalid_argument);
}

TEST(UnitaryFunction, ZeroAngleIsIdentity) {
    std::mt19937_64 rng(16);
    const auto g = oracle::random_hermitian(rng, 6);
    EXPECT_LT(max_abs_diff(unitary_function_of_hermitian(g, 0.0), ComplexMatrix::identity(6)), 1e-12);
}

TEST(UnitaryFunction, DiagonalPhases) {
    const std::vector<double> diag{1.0, 2.0};
    const auto u = unitary_function_of_hermitian(ComplexMatrix::diagonal(diag), std::numbers::pi);
    const ComplexMatrix expected{{-1.0, 0.0}, {0.0, 1.0}};
    EXPECT_LT(max_abs_diff(u, expected), 1e-14);
}

TEST(UnitaryFunction, MatchesTaylorOracle) {
    std::mt19937_64 rng(17);
    const auto g = oracle::random_hermitian(rng, 4);
    const double theta = 0.7;
    EXPECT_LT(max_abs_diff(unitary_function_of_hermitian(g, theta), oracle::taylor_expm(g, theta)), 1e-10);
}

TEST(UnitaryFunction, UnitaryAndAdditive) {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 4; ++trial) {
        const auto g = oracle::random_hermitian(rng, 8);
        const double t1 = 0.3 + trial, t2 = -1.1 * trial;
        const auto u1 = unitary_function_of_hermitian(g, t1);
        EXPECT_LT(unitarity_residual(u1), 1e-10);
        const auto composed = matmul(u1, unitary_function_of_hermitian(g, t2));
        EXPECT_LT(max_abs_diff(composed, unitary_function_of_hermitian(g, t1 + t2)), 1e-10);
    }
}

TEST(UnitaryFunction, ApplyMatchesMatrix) {
    std::mt19937_64 rng(19);
    const auto g = oracle::random_hermitian(rng, 10);
    const auto x = oracle::random_vector(rng, 10);
    const auto eig = hermitian_eig(g);
    EXPECT_LT(max_abs_diff(apply_unitary_function(eig, 1.3, x), matvec(unitary_function(eig, 1.3), x)), 1e-12);
}

TEST(UnitaryFunction, RejectsNonFiniteAngle) {
    EXPECT_THROW(unitary_function_of_hermitian(ComplexMatrix::identity(2), std::nan("")), std::invalid_argument);
}

TEST(Residuals, Basics) {
    EXPECT_EQ(unitarity_residual(ComplexMatrix::identity(3)), 0.0);
    EXPECT_EQ(hermiticity_residual(ComplexMatrix::identity(3)), 0.0);
    const ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_DOUBLE_EQ(hermiticity_residual(a), 1.0);
    EXPECT_EQ(hermiticity_residual(hermitian_part(a)), 0.0);
    EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix::identity(4)), 2.0);
}
