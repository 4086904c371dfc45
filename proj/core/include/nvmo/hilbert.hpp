#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nvmo/linalg.hpp"

namespace nvmo {

enum class SubsystemKind { qubit, boson };

// Qubit basis ordering is (|e>, |g>): level 0 is excited, level 1 is ground.
inline constexpr std::size_t kExcited = 0;
inline constexpr std::size_t kGround = 1;

struct SubsystemSpec {
  SubsystemKind kind = SubsystemKind::qubit;
  int n_max = 1;  // bosons only; dim = n_max + 1
  std::string label;

  static SubsystemSpec qubit(std::string label = "nv");
  static SubsystemSpec boson(int n_max, std::string label = "b");

  std::size_t dim() const { return kind == SubsystemKind::qubit ? 2 : static_cast<std::size_t>(n_max) + 1; }
  friend bool operator==(const SubsystemSpec&, const SubsystemSpec&) = default;
};

/// Ordered tensor product of subsystems. Composite indices are row-major over
/// the listed order, so the last subsystem varies fastest.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<SubsystemSpec> subsystems);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return subsystems_.size(); }
  const SubsystemSpec& subsystem(std::size_t i) const;
  const std::vector<SubsystemSpec>& subsystems() const { return subsystems_; }

  std::size_t flatten(std::span<const std::size_t> levels) const;
  std::vector<std::size_t> unflatten(std::size_t index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<SubsystemSpec> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

class StateVector {
 public:
  StateVector(HilbertSpace space, std::vector<Complex> amplitudes);

  const HilbertSpace& space() const { return space_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return amplitudes_.size(); }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const { return nvmo::norm(amplitudes_); }

  /// |psi><psi|
  CMatrix projector() const;

 private:
  HilbertSpace space_;
  std::vector<Complex> amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace against default tolerances.
  DensityMatrix(HilbertSpace space, CMatrix matrix);
  /// Wraps a propagated state without the trace check; the integrator tracks
  /// trace drift separately and reports it.
  static DensityMatrix from_evolved(HilbertSpace space, CMatrix matrix);
  static DensityMatrix from_pure(const StateVector& psi);

  const HilbertSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

  /// Smallest eigenvalue by full diagonalization.
  double min_eigenvalue() const;

 private:
  DensityMatrix(HilbertSpace space, CMatrix matrix, bool check_trace);
  HilbertSpace space_;
  CMatrix matrix_;
};

/// Truncated bosonic annihilation operator, <n-1|b|n> = sqrt(n).
CMatrix annihilation(int n_max);
CMatrix creation(int n_max);
CMatrix number_operator(int n_max);

struct QubitOps {
  CMatrix sigma_z;
  CMatrix sigma_x;
  CMatrix sigma_plus;
  CMatrix sigma_minus;
};
QubitOps qubit_ops();

/// I (x) ... (x) op (x) ... (x) I with op placed at subsystem `index`.
CMatrix embed(const CMatrix& op, std::size_t index, const HilbertSpace& space);

/// J+ = sum_i sigma_i^+ over the listed qubit subsystems.
CMatrix collective_raising(const HilbertSpace& space, std::span<const std::size_t> qubit_indices);
/// Indices of all qubit subsystems in order.
std::vector<std::size_t> qubit_indices(const HilbertSpace& space);

/// Un-normalized Bose-Einstein weights p_n = m^n / (1+m)^{n+1}, n = 0..n_max.
std::vector<double> thermal_weights(double n_mean, int n_max);
/// Diagonal thermal density matrix, renormalized after truncation.
DensityMatrix thermal_state(double n_mean, int n_max);
/// 1 - sum of the truncated weights.
double thermal_truncation_error(double n_mean, int n_max);

StateVector fock_state(int n, int n_max);
/// Basis vector with the given level on every subsystem (qubits: kExcited/kGround).
StateVector basis_product_state(const HilbertSpace& space, std::span<const std::size_t> levels);

/// Tensor product of states in subsystem order.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
HilbertSpace tensor(const HilbertSpace& a, const HilbertSpace& b);

}  // namespace nvmo
