#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nvmo/tolerances.hpp"

namespace nvmo {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense row-major complex matrix. Every operator, state projector and
/// density matrix in the library is carried by this type.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  /// Row-wise literal, e.g. `CMatrix::from_rows({{0, 1}, {1, 0}})`.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }
  Complex* row(std::size_t r) { return data_.data() + r * cols_; }
  const Complex* row(std::size_t r) const { return data_.data() + r * cols_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);
  /// this += s * other
  CMatrix& axpy(Complex s, const CMatrix& other);

  void set_zero();

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator-(CMatrix a);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
Complex trace(const CMatrix& a);

/// [a, b] = ab - ba
CMatrix commutator(const CMatrix& a, const CMatrix& b);

std::vector<Complex> matvec(const CMatrix& a, std::span<const Complex> x);
Complex inner(std::span<const Complex> x, std::span<const Complex> y);  // <x|y>
double norm(std::span<const Complex> x);

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& a);
/// max|a - a^dagger|
double hermiticity_error(const CMatrix& a);
bool is_hermitian(const CMatrix& a, double rel_tol = default_tolerances().hermitian_rel);
bool all_finite(const CMatrix& a);

/// In place a <- (a + a^dagger)/2.
void symmetrize(CMatrix& a);

/// All eigenvalues of a Hermitian matrix in ascending order, by cyclic
/// complex Jacobi rotations. Throws ContractViolation for non-Hermitian
/// input and ShapeError for non-square input.
std::vector<double> hermitian_eigenvalues(const CMatrix& a,
                                          const Tolerances& tol = default_tolerances());

/// Cholesky factorization attempt of (a + shift*I). Succeeds exactly when the
/// shifted matrix is numerically positive definite, which certifies
/// lambda_min(a) > -shift. Much cheaper than a full spectrum for large a.
bool is_positive_definite_shifted(const CMatrix& a, double shift);

/// Compressed-row sparse complex matrix. Used for applying the (very sparse)
/// operators of a scenario to dense states; not part of any public contract.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Keeps entries with |value| > drop_tol.
  static SparseMatrix from_dense(const CMatrix& m, double drop_tol = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  CMatrix to_dense() const;
  SparseMatrix adjoint() const;

  /// out += s * (this * x)
  void multiply_add(const CMatrix& x, Complex s, CMatrix& out) const;
  /// out += s * (x * this)
  void right_multiply_add(const CMatrix& x, Complex s, CMatrix& out) const;
  /// out += s * (this * x) for a vector
  void multiply_add(std::span<const Complex> x, Complex s, std::span<Complex> out) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<Complex> values_;
};

}  // namespace nvmo
