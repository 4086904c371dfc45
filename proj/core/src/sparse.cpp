#include <cmath>

#include "nvmo/errors.hpp"
#include "nvmo/linalg.hpp"

namespace nvmo {

SparseMatrix SparseMatrix::from_dense(const CMatrix& m, double drop_tol) {
  SparseMatrix s;
  s.rows_ = m.rows();
  s.cols_ = m.cols();
  s.row_ptr_.reserve(m.rows() + 1);
  s.row_ptr_.push_back(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      if (std::abs(v) > drop_tol) {
        s.col_idx_.push_back(j);
        s.values_.push_back(v);
      }
    }
    s.row_ptr_.push_back(s.values_.size());
  }
  return s;
}

CMatrix SparseMatrix::to_dense() const {
  CMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) m(i, col_idx_[k]) = values_[k];
  return m;
}

SparseMatrix SparseMatrix::adjoint() const {
  SparseMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++counts[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
  t.row_ptr_ = counts;
  t.col_idx_.resize(values_.size());
  t.values_.resize(values_.size());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t dst = cursor[col_idx_[k]]++;
      t.col_idx_[dst] = i;
      t.values_[dst] = std::conj(values_[k]);
    }
  }
  return t;
}

void SparseMatrix::multiply_add(const CMatrix& x, Complex s, CMatrix& out) const {
  if (cols_ != x.rows() || out.rows() != rows_ || out.cols() != x.cols()) {
    throw ShapeError("SparseMatrix::multiply_add: dimension mismatch");
  }
  const std::size_t m = x.cols();
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex* oi = out.row(i);
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const Complex v = s * values_[k];
      const Complex* xr = x.row(col_idx_[k]);
      for (std::size_t j = 0; j < m; ++j) oi[j] += v * xr[j];
    }
  }
}

void SparseMatrix::right_multiply_add(const CMatrix& x, Complex s, CMatrix& out) const {
  if (x.cols() != rows_ || out.rows() != x.rows() || out.cols() != cols_) {
    throw ShapeError("SparseMatrix::right_multiply_add: dimension mismatch");
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const Complex* xr = x.row(r);
    Complex* orow = out.row(r);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Complex xi = xr[i];
      if (xi == Complex{}) continue;
      const Complex v = s * xi;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) orow[col_idx_[k]] += v * values_[k];
    }
  }
}

void SparseMatrix::multiply_add(std::span<const Complex> x, Complex s,
                                std::span<Complex> out) const {
  if (x.size() != cols_ || out.size() != rows_) {
    throw ShapeError("SparseMatrix::multiply_add: vector length mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{};
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
    out[i] += s * acc;
  }
}

}  // namespace nvmo
