#include "nvmo/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvmo/errors.hpp"

namespace nvmo {

SubsystemSpec SubsystemSpec::qubit(std::string label) {
  return SubsystemSpec{SubsystemKind::qubit, 1, std::move(label)};
}

SubsystemSpec SubsystemSpec::boson(int n_max, std::string label) {
  if (n_max < 1) throw ParameterError("boson subsystem needs n_max >= 1, got " + std::to_string(n_max));
  return SubsystemSpec{SubsystemKind::boson, n_max, std::move(label)};
}

HilbertSpace::HilbertSpace(std::vector<SubsystemSpec> subsystems)
    : subsystems_(std::move(subsystems)) {
  strides_.assign(subsystems_.size(), 1);
  dim_ = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    const auto& s = subsystems_[i];
    if (s.kind == SubsystemKind::boson && s.n_max < 1) {
      throw ParameterError("boson subsystem '" + s.label + "' needs n_max >= 1");
    }
    strides_[i] = dim_;
    dim_ *= s.dim();
  }
}

const SubsystemSpec& HilbertSpace::subsystem(std::size_t i) const {
  if (i >= subsystems_.size()) {
    throw ParameterError("subsystem index " + std::to_string(i) + " out of range (space has " +
                         std::to_string(subsystems_.size()) + ")");
  }
  return subsystems_[i];
}

std::size_t HilbertSpace::flatten(std::span<const std::size_t> levels) const {
  if (levels.size() != subsystems_.size()) throw ShapeError("flatten: wrong number of levels");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] >= subsystems_[i].dim()) {
      throw ParameterError("flatten: level " + std::to_string(levels[i]) + " out of range for '" +
                           subsystems_[i].label + "'");
    }
    idx += levels[i] * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> HilbertSpace::unflatten(std::size_t index) const {
  if (index >= dim_) throw ParameterError("unflatten: index out of range");
  std::vector<std::size_t> levels(subsystems_.size());
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    levels[i] = index / strides_[i];
    index %= strides_[i];
  }
  return levels;
}

StateVector::StateVector(HilbertSpace space, std::vector<Complex> amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) throw ShapeError("StateVector: length does not match space");
  if (std::abs(nvmo::norm(amplitudes_) - 1.0) > default_tolerances().state_norm) {
    throw ParameterError("StateVector: norm " + std::to_string(nvmo::norm(amplitudes_)) + " != 1");
  }
}

CMatrix StateVector::projector() const {
  const std::size_t n = amplitudes_.size();
  CMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
  return p;
}

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix matrix)
    : DensityMatrix(std::move(space), std::move(matrix), true) {}

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix matrix, bool check_trace)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto& tol = default_tolerances();
  if (matrix_.rows() != space_.dim() || !matrix_.is_square()) {
    throw ShapeError("DensityMatrix: matrix does not match space dimension");
  }
  if (hermiticity_error(matrix_) > tol.density_hermitian) {
    throw ParameterError("DensityMatrix: not Hermitian");
  }
  if (check_trace) {
    if (std::abs(trace(matrix_) - 1.0) > tol.density_trace) {
      throw ParameterError("DensityMatrix: trace deviates from 1");
    }
    if (!is_positive_definite_shifted(matrix_, -tol.density_min_eig)) {
      throw ParameterError("DensityMatrix: eigenvalue below " + std::to_string(tol.density_min_eig));
    }
  }
}

DensityMatrix DensityMatrix::from_evolved(HilbertSpace space, CMatrix matrix) {
  return DensityMatrix(std::move(space), std::move(matrix), false);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.space(), psi.projector());
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(matrix_).front(); }

CMatrix annihilation(int n_max) {
  if (n_max < 1) throw ParameterError("annihilation: n_max must be >= 1");
  const std::size_t d = static_cast<std::size_t>(n_max) + 1;
  CMatrix b(d, d);
  for (std::size_t n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

CMatrix creation(int n_max) { return adjoint(annihilation(n_max)); }

CMatrix number_operator(int n_max) {
  if (n_max < 1) throw ParameterError("number_operator: n_max must be >= 1");
  CMatrix n(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

QubitOps qubit_ops() {
  QubitOps ops;
  ops.sigma_z = CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  ops.sigma_plus = CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});  // |e><g|
  ops.sigma_minus = adjoint(ops.sigma_plus);
  ops.sigma_x = ops.sigma_plus + ops.sigma_minus;
  return ops;
}

CMatrix embed(const CMatrix& op, std::size_t index, const HilbertSpace& space) {
  const auto& target = space.subsystem(index);
  if (!op.is_square() || op.rows() != target.dim()) {
    throw ShapeError("embed: operator is " + std::to_string(op.rows()) + "x" +
                     std::to_string(op.cols()) + " but subsystem '" + target.label + "' has dim " +
                     std::to_string(target.dim()));
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t i = 0; i < index; ++i) left *= space.subsystem(i).dim();
  for (std::size_t i = index + 1; i < space.size(); ++i) right *= space.subsystem(i).dim();

  // Direct placement avoids materializing the identity factors.
  const std::size_t d = op.rows();
  const std::size_t n = space.dim();
  CMatrix out(n, n);
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex v = op(i, j);
        if (v == Complex{}) continue;
        const std::size_t row0 = (l * d + i) * right;
        const std::size_t col0 = (l * d + j) * right;
        for (std::size_t r = 0; r < right; ++r) out(row0 + r, col0 + r) = v;
      }
    }
  }
  return out;
}

std::vector<std::size_t> qubit_indices(const HilbertSpace& space) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.subsystem(i).kind == SubsystemKind::qubit) idx.push_back(i);
  return idx;
}

CMatrix collective_raising(const HilbertSpace& space, std::span<const std::size_t> qubit_idx) {
  const auto sp = qubit_ops().sigma_plus;
  CMatrix j(space.dim(), space.dim());
  for (std::size_t i : qubit_idx) {
    if (space.subsystem(i).kind != SubsystemKind::qubit) {
      throw ParameterError("collective_raising: subsystem " + std::to_string(i) + " is not a qubit");
    }
    j += embed(sp, i, space);
  }
  return j;
}

std::vector<double> thermal_weights(double n_mean, int n_max) {
  if (!(n_mean >= 0.0) || !std::isfinite(n_mean)) {
    throw ParameterError("thermal state needs n_mean >= 0, got " + std::to_string(n_mean));
  }
  if (n_max < 1) throw ParameterError("thermal state needs n_max >= 1");
  std::vector<double> p(n_max + 1);
  const double ratio = n_mean / (1.0 + n_mean);
  double w = 1.0 / (1.0 + n_mean);
  for (int n = 0; n <= n_max; ++n) {
    p[n] = w;
    w *= ratio;
  }
  return p;
}

double thermal_truncation_error(double n_mean, int n_max) {
  const auto p = thermal_weights(n_mean, n_max);
  double z = 0.0;
  for (double v : p) z += v;
  return 1.0 - z;
}

DensityMatrix thermal_state(double n_mean, int n_max) {
  auto p = thermal_weights(n_mean, n_max);
  double z = 0.0;
  for (double v : p) z += v;
  for (double& v : p) v /= z;
  HilbertSpace space({SubsystemSpec::boson(n_max, "b")});
  return DensityMatrix(std::move(space), CMatrix::diagonal(std::span<const double>(p)));
}

StateVector fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) {
    throw ParameterError("fock_state: level " + std::to_string(n) + " outside [0, " +
                         std::to_string(n_max) + "]");
  }
  HilbertSpace space({SubsystemSpec::boson(n_max, "b")});
  std::vector<Complex> amps(space.dim());
  amps[n] = 1.0;
  return StateVector(std::move(space), std::move(amps));
}

StateVector basis_product_state(const HilbertSpace& space, std::span<const std::size_t> levels) {
  std::vector<Complex> amps(space.dim());
  amps[space.flatten(levels)] = 1.0;
  return StateVector(space, std::move(amps));
}

HilbertSpace tensor(const HilbertSpace& a, const HilbertSpace& b) {
  auto subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  return HilbertSpace(std::move(subs));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.space(), b.space()), kron(a.matrix(), b.matrix()));
}

}  // namespace nvmo
