#include "nvmo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvmo/errors.hpp"

namespace nvmo {

namespace {

std::string shape_str(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " +
                     shape_str(b));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("CMatrix: data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("CMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return CMatrix(r, c, std::move(data));
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix& CMatrix::axpy(Complex s, const CMatrix& other) {
  require_same_shape(*this, other, "axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

void CMatrix::set_zero() { std::fill(data_.begin(), data_.end(), Complex{0.0, 0.0}); }

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ (" + shape_str(a) + " * " + shape_str(b) +
                     ")");
  }
  CMatrix c(a.rows(), b.cols());
  // i-k-j order keeps the inner loop contiguous in both b and c
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* ci = c.row(i);
    const Complex* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = ai[k];
      if (aik == Complex{}) continue;
      const Complex* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  CMatrix k(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < q; ++c) k(i * p + r, j * q + c) = aij * b(r, c);
    }
  }
  return k;
}

Complex trace(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: matrix is " + shape_str(a));
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return matmul(a, b) - matmul(b, a); }

std::vector<Complex> matvec(const CMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw ShapeError("matvec: dimension mismatch");
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    const Complex* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += ai[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw ShapeError("inner: length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm(std::span<const Complex> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double frobenius_norm(const CMatrix& a) { return norm(a.data()); }

double hermiticity_error(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("hermiticity_error: matrix is " + shape_str(a));
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

bool is_hermitian(const CMatrix& a, double rel_tol) {
  if (!a.is_square()) return false;
  return hermiticity_error(a) <= rel_tol * std::max(max_abs(a), 1e-300);
}

bool all_finite(const CMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

void symmetrize(CMatrix& a) {
  if (!a.is_square()) throw ShapeError("symmetrize: matrix is " + shape_str(a));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    a(i, i) = Complex{a(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
}

bool is_positive_definite_shifted(const CMatrix& a, double shift) {
  if (!a.is_square()) throw ShapeError("is_positive_definite_shifted: matrix is " + shape_str(a));
  const std::size_t n = a.rows();
  // Lower-triangular Cholesky factor, row-major, only j <= i used.
  std::vector<Complex> l(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s = a(i, j);
      if (i == j) s += shift;
      const Complex* li = &l[i * n];
      const Complex* lj = &l[j * n];
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * std::conj(lj[k]);
      if (i == j) {
        const double d = s.real();
        if (!(d > 0.0)) return false;
        l[i * n + i] = std::sqrt(d);
      } else {
        l[i * n + j] = s / l[j * n + j].real();
      }
    }
  }
  return true;
}

}  // namespace nvmo
