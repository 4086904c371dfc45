#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's arithmetic beyond the CMatrix container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nvmo/linalg.hpp"
#include "nvmo/models.hpp"

namespace nvmo::testing {

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  CMatrix a = random_matrix(n, n, rng);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

inline CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline CMatrix naive_adjoint(const CMatrix& a) {
  CMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

// (a (x) b)[(i p + k), (j q + l)] = a[i, j] b[k, l]
inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  CMatrix c(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) c(i * p + k, j * q + l) = a(i, j) * b(k, l);
  return c;
}

inline Complex naive_trace(const CMatrix& a) {
  Complex s{};
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline CMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  CMatrix rho = naive_matmul(a, naive_adjoint(a));
  const Complex tr = naive_trace(rho);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) /= tr.real();
  return rho;
}

// Number of eigenvalues of h below x: the count of negative pivots of the
// LDL^dagger factorization of h - x I (Sylvester's law of inertia).
inline int eigen_count_below(const CMatrix& h, double x) {
  const std::size_t n = h.rows();
  std::vector<Complex> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = h(i, j) - (i == j ? x : 0.0);
  int negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = m[k * n + k].real();
    if (d == 0.0) d = 1e-300;
    if (d < 0.0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = m[i * n + k] / d;
      for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= f * std::conj(m[j * n + k]);
    }
  }
  return negatives;
}

// Roots of det(h - x I) located by bisection on the inertia count.
inline std::vector<double> bisection_eigenvalues(const CMatrix& h, double tol = 1e-13) {
  const std::size_t n = h.rows();
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(h(i, j));
    radius = std::max(radius, row);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = -radius - 1.0, hi = radius + 1.0;
    while (hi - lo > tol * std::max(1.0, radius)) {
      const double mid = 0.5 * (lo + hi);
      if (eigen_count_below(h, mid) > static_cast<int>(k)) hi = mid; else lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// rho^{T_A}_{m mu, n nu} = rho_{n mu, m nu} for a dA x dB bipartite matrix.
inline CMatrix four_index_partial_transpose(const CMatrix& rho, std::size_t dA, std::size_t dB) {
  CMatrix out(dA * dB, dA * dB);
  for (std::size_t m = 0; m < dA; ++m)
    for (std::size_t mu = 0; mu < dB; ++mu)
      for (std::size_t n = 0; n < dA; ++n)
        for (std::size_t nu = 0; nu < dB; ++nu) out(m * dB + mu, n * dB + nu) = rho(n * dB + mu, m * dB + nu);
  return out;
}

// Forward-Euler integration of <a>' = -i Omega1/2 - (gamma1/2)<a> from <a> = 0.
inline Complex euler_mean_field_alpha(double omega1, double gamma1, double t_end, double dt) {
  Complex a{};
  const auto steps = static_cast<std::size_t>(t_end / dt);
  for (std::size_t k = 0; k < steps; ++k) a += dt * (Complex(0.0, -omega1 / 2.0) - (gamma1 / 2.0) * a);
  return a;
}

// Truncated bosonic annihilation operator written out element by element.
inline CMatrix hand_annihilation(int n_max) {
  CMatrix b(static_cast<std::size_t>(n_max) + 1, static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) b(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)) = std::sqrt(static_cast<double>(n));
  return b;
}

inline CMatrix eye(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace nvmo::testing
