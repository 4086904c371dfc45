#include <gtest/gtest.h>

#include <numeric>

#include "nvmo/errors.hpp"
#include "nvmo/linalg.hpp"
#include "oracles.hpp"

using namespace nvmo;
using namespace nvmo::testing;

namespace {

const CMatrix kX = CMatrix::from_rows({{0, 1}, {1, 0}});

}  // namespace

TEST(CMatrix, RejectsMismatchedData) {
  EXPECT_THROW(CMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
}

TEST(Matmul, IdentityAndInvolution) {
  EXPECT_EQ(matmul(CMatrix::identity(2), kX), kX);
  EXPECT_EQ(matmul(kX, kX), CMatrix::identity(2));
}

TEST(Matmul, MatchesTripleLoop) {
  std::mt19937_64 rng(11);
  const CMatrix a = random_matrix(3, 3, rng);
  const CMatrix b = random_matrix(3, 3, rng);
  EXPECT_LT(max_diff(matmul(a, b), naive_matmul(a, b)), 1e-14);
  const CMatrix c = random_matrix(3, 5, rng);
  EXPECT_LT(max_diff(matmul(a, c), naive_matmul(a, c)), 1e-14);
}

TEST(Matmul, ShapeMismatchThrows) {
  EXPECT_THROW(matmul(CMatrix(2, 3), CMatrix(2, 3)), ShapeError);
}

TEST(Matmul, Associative) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_matrix(4, 4, rng), b = random_matrix(4, 4, rng), c = random_matrix(4, 4, rng);
    const CMatrix lhs = matmul(matmul(a, b), c);
    EXPECT_LT(max_diff(lhs, matmul(a, matmul(b, c))), 1e-12 * max_abs(lhs));
  }
}

TEST(Adjoint, Examples) {
  const CMatrix sm = CMatrix::from_rows({{0, 1}, {0, 0}});
  EXPECT_EQ(adjoint(sm), CMatrix::from_rows({{0, 0}, {1, 0}}));
  EXPECT_EQ(adjoint(CMatrix::from_rows({{kI}})), CMatrix::from_rows({{-kI}}));
}

TEST(Adjoint, MatchesOracleAndIsInvolution) {
  std::mt19937_64 rng(13);
  const CMatrix a = random_matrix(4, 4, rng);
  EXPECT_EQ(adjoint(a), naive_adjoint(a));
  EXPECT_EQ(adjoint(adjoint(a)), a);
  const CMatrix r = random_matrix(2, 5, rng);
  EXPECT_EQ(adjoint(r), naive_adjoint(r));
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(CMatrix::identity(2), CMatrix::identity(3)), CMatrix::identity(6));
  const double d[] = {1, 1, -1, -1};
  EXPECT_EQ(kron(CMatrix::from_rows({{1, 0}, {0, -1}}), CMatrix::identity(2)), CMatrix::diagonal(std::span<const double>(d)));
}

TEST(Kron, MatchesFourIndexLoop) {
  std::mt19937_64 rng(14);
  const CMatrix a = random_matrix(2, 2, rng);
  const CMatrix b = random_matrix(3, 3, rng);
  EXPECT_EQ(kron(a, b), naive_kron(a, b));
  const CMatrix c = random_matrix(2, 3, rng);
  EXPECT_EQ(kron(c, a), naive_kron(c, a));
}

TEST(Kron, Bilinear) {
  std::mt19937_64 rng(15);
  const CMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(3, 3, rng);
  EXPECT_LT(max_diff(kron(a, b + c), kron(a, b) + kron(a, c)), 1e-12);
}

TEST(Kron, MixedProduct) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
    const CMatrix c = random_matrix(2, 2, rng), d = random_matrix(3, 3, rng);
    EXPECT_LT(max_diff(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d))), 1e-10);
  }
}

TEST(Trace, Examples) {
  EXPECT_EQ(trace(CMatrix::identity(5)), Complex(5.0));
  EXPECT_EQ(trace(kX), Complex(0.0));
  std::mt19937_64 rng(17);
  const CMatrix a = random_matrix(4, 4, rng);
  EXPECT_LT(std::abs(trace(a) - naive_trace(a)), 1e-15);
  EXPECT_THROW(trace(CMatrix(2, 3)), ShapeError);
}

TEST(Eigen, Examples) {
  EXPECT_EQ(hermitian_eigenvalues(CMatrix::identity(2)), (std::vector<double>{1.0, 1.0}));
  const auto e = hermitian_eigenvalues(kX);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(e[0], -1.0, 1e-14);
  EXPECT_NEAR(e[1], 1.0, 1e-14);
}

TEST(Eigen, MatchesCharacteristicPolynomialBisection) {
  std::mt19937_64 rng(18);
  for (std::size_t n : {3u, 3u, 3u, 6u, 10u}) {
    const CMatrix h = random_hermitian(n, rng);
    const auto jac = hermitian_eigenvalues(h);
    const auto ref = bisection_eigenvalues(h);
    const double scale = frobenius_norm(h);
    ASSERT_EQ(jac.size(), ref.size());
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(jac[k], ref[k], 1e-9 * scale) << "n=" << n << " k=" << k;
  }
}

TEST(Eigen, FrozenRandomSpectrum) {
  // Seeded 3x3 draw; expected values computed with the bisection oracle above.
  std::mt19937_64 rng(2024);
  const CMatrix h = random_hermitian(3, rng);
  const auto ref = bisection_eigenvalues(h);
  const auto jac = hermitian_eigenvalues(h);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(jac[k], ref[k], 1e-12);
  EXPECT_TRUE(std::is_sorted(jac.begin(), jac.end()));
}

TEST(Eigen, SumEqualsTraceAndSquaresSpectrum) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix h = random_hermitian(7, rng);
    const auto e = hermitian_eigenvalues(h);
    const double sum = std::accumulate(e.begin(), e.end(), 0.0);
    EXPECT_NEAR(sum, trace(h).real(), 1e-9 * frobenius_norm(h));

    std::vector<double> sq;
    for (double v : e) sq.push_back(v * v);
    std::sort(sq.begin(), sq.end());
    const auto e2 = hermitian_eigenvalues(matmul(h, h));
    for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e2[k], sq[k], 1e-9 * frobenius_norm(h) * frobenius_norm(h));
  }
}

TEST(Eigen, DegenerateAndLarger) {
  std::mt19937_64 rng(20);
  // Embedded spectra are degenerate, which stresses the rotation threshold.
  const CMatrix h = kron(random_hermitian(3, rng), CMatrix::identity(4));
  const auto e = hermitian_eigenvalues(h);
  for (std::size_t k = 0; k < e.size(); k += 4)
    for (std::size_t r = 1; r < 4; ++r) EXPECT_NEAR(e[k], e[k + r], 1e-12);

  const CMatrix big = random_hermitian(60, rng);
  const auto eb = hermitian_eigenvalues(big);
  EXPECT_NEAR(std::accumulate(eb.begin(), eb.end(), 0.0), trace(big).real(), 1e-9 * frobenius_norm(big));
}

TEST(Eigen, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eigenvalues(CMatrix::from_rows({{0, 1}, {0, 0}})), ContractViolation);
  EXPECT_THROW(hermitian_eigenvalues(CMatrix(2, 3)), ShapeError);
}

TEST(Hermiticity, Tolerance) {
  std::mt19937_64 rng(21);
  const CMatrix h = random_hermitian(5, rng);
  EXPECT_TRUE(is_hermitian(h));
  CMatrix bad = h;
  bad(0, 1) += 1e-6;
  EXPECT_FALSE(is_hermitian(bad));
  symmetrize(bad);
  EXPECT_TRUE(is_hermitian(bad));
}

TEST(ShiftedCholesky, CertifiesLowerBound) {
  std::mt19937_64 rng(22);
  const CMatrix h = random_hermitian(8, rng);
  const double lmin = hermitian_eigenvalues(h).front();
  EXPECT_TRUE(is_positive_definite_shifted(h, -lmin + 1e-6));
  EXPECT_FALSE(is_positive_definite_shifted(h, -lmin - 1e-6));
}

TEST(Sparse, RoundTripAndProducts) {
  std::mt19937_64 rng(23);
  CMatrix s = random_matrix(6, 6, rng);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if ((i + 2 * j) % 3 != 0) s(i, j) = 0.0;
  const SparseMatrix sp = SparseMatrix::from_dense(s);
  EXPECT_EQ(sp.to_dense(), s);
  EXPECT_EQ(sp.adjoint().to_dense(), naive_adjoint(s));

  const CMatrix x = random_matrix(6, 6, rng);
  const Complex c(0.3, -1.1);
  CMatrix out = random_matrix(6, 6, rng);
  CMatrix expect = out + c * naive_matmul(s, x);
  sp.multiply_add(x, c, out);
  EXPECT_LT(max_diff(out, expect), 1e-13);

  out = random_matrix(6, 6, rng);
  expect = out + c * naive_matmul(x, s);
  sp.right_multiply_add(x, c, out);
  EXPECT_LT(max_diff(out, expect), 1e-13);
}
