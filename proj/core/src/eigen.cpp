// Cyclic Jacobi eigenvalue iteration for complex Hermitian matrices.
//
// Each rotation first removes the phase of the pivot a_pq (a diagonal unitary
// on index q), then applies the classical real 2x2 rotation. Only eigenvalues
// are produced; the accumulated rotations are not kept.

#include <algorithm>
#include <cmath>
#include <string>

#include "nvmo/errors.hpp"
#include "nvmo/linalg.hpp"

namespace nvmo {

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) {
    throw ShapeError("hermitian_eigenvalues: matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  const std::size_t n = a.rows();
  if (n == 0) return {};
  const double scale = max_abs(a);
  if (!all_finite(a)) throw ContractViolation("hermitian_eigenvalues: non-finite entries");
  if (hermiticity_error(a) > tol.hermitian_rel * std::max(scale, 1e-300)) {
    throw ContractViolation("hermitian_eigenvalues: matrix is not Hermitian (max|M - M^dagger| = " +
                            std::to_string(hermiticity_error(a)) + ")");
  }

  CMatrix m = a;
  symmetrize(m);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = m(i, i).real();

  const double total = frobenius_norm(m);
  if (total == 0.0) return d;
  const double target = tol.jacobi_offdiag_rel * total;

  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(m(p, q));
    const double off = std::sqrt(2.0 * off2);
    if (off <= target) {
      std::sort(d.begin(), d.end());
      return d;
    }
    // Skip tiny pivots during the first sweeps, as in the classic cyclic scheme.
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double g = std::abs(apq);
        if (g == 0.0 || g <= threshold) continue;
        const double h = d[q] - d[p];
        double t;
        if (std::abs(h) + 100.0 * g == std::abs(h)) {
          t = g / h;
        } else {
          const double theta = 0.5 * h / g;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = std::conj(apq) / g;  // e^{-i arg a_pq}

        d[p] -= t * g;
        d[q] += t * g;
        m(p, p) = d[p];
        m(q, q) = d[q];
        m(p, q) = 0.0;
        m(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = m(k, p);
          const Complex akq = phase * m(k, q);
          const Complex new_kp = c * akp - s * akq;
          const Complex new_kq = s * akp + c * akq;
          m(k, p) = new_kp;
          m(p, k) = std::conj(new_kp);
          m(k, q) = new_kq;
          m(q, k) = std::conj(new_kq);
        }
      }
    }
  }
  throw ContractViolation("hermitian_eigenvalues: Jacobi iteration did not converge in " +
                          std::to_string(tol.jacobi_max_sweeps) + " sweeps");
}

}  // namespace nvmo
