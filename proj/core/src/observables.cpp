#include "nvmo/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvmo/errors.hpp"
#include "nvmo/models.hpp"

namespace nvmo {

void BipartiteSplit::validate() const {
  if (part_a.empty() || part_a.size() >= space.size()) {
    throw ParameterError("BipartiteSplit: part A must be a non-empty proper subset of the subsystems");
  }
  for (std::size_t i = 0; i < part_a.size(); ++i) {
    if (part_a[i] >= space.size()) throw ParameterError("BipartiteSplit: subsystem index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (part_a[i] == part_a[j]) throw ParameterError("BipartiteSplit: duplicate subsystem index");
    }
  }
}

CMatrix partial_transpose(const CMatrix& rho, const BipartiteSplit& split) {
  split.validate();
  const auto& space = split.space;
  const std::size_t n = space.dim();
  if (!rho.is_square() || rho.rows() != n) throw ShapeError("partial_transpose: state does not match split space");

  // A composite index is a sum of per-subsystem contributions, so it splits
  // into a_part[i] (levels of part A) and i - a_part[i] (the rest).
  std::vector<std::size_t> a_part(n, 0);
  std::vector<std::size_t> strides(space.size(), 1);
  for (std::size_t k = space.size() - 1; k-- > 0;) strides[k] = strides[k + 1] * space.subsystem(k + 1).dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto levels = space.unflatten(i);
    for (std::size_t k : split.part_a) a_part[i] += levels[k] * strides[k];
  }

  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bi = i - a_part[i];
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bj = j - a_part[j];
      out(a_part[j] + bi, a_part[i] + bj) = rho(i, j);
    }
  }
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, const BipartiteSplit& split) {
  if (!(rho.space() == split.space)) throw ShapeError("partial_transpose: state space differs from split space");
  return partial_transpose(rho.matrix(), split);
}

double negativity(const DensityMatrix& rho, const BipartiteSplit& split) {
  const auto eig = hermitian_eigenvalues(partial_transpose(rho, split));
  double trace_norm = 0.0;
  for (double v : eig) trace_norm += std::abs(v);
  return (trace_norm - 1.0) / 2.0;
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
  if (target.dim() != rho.dim()) throw ShapeError("fidelity_pure: target and state dimensions differ");
  const auto amps = target.amplitudes();
  const auto rho_psi = matvec(rho.matrix(), amps);
  const double overlap = inner(amps, rho_psi).real();
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

Complex expectation(const DensityMatrix& rho, const CMatrix& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) throw ShapeError("expectation: operator dimension");
  const CMatrix& m = rho.matrix();
  Complex acc{};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * op(j, i);
  return acc;
}

Complex expectation(const StateVector& psi, const CMatrix& op) {
  if (op.rows() != psi.dim() || op.cols() != psi.dim()) throw ShapeError("expectation: operator dimension");
  return inner(psi.amplitudes(), matvec(op, psi.amplitudes()));
}

QuadratureMoments d1_variance(const DensityMatrix& rho, double delta_phase) {
  const auto ops = collective_mode_ops(rho.space(), delta_phase);
  QuadratureMoments m{};
  m.mean = expectation(rho, ops.d1).real();
  m.mean_sq = expectation(rho, matmul(ops.d1, ops.d1)).real();
  m.variance = m.mean_sq - m.mean * m.mean;
  return m;
}

double tail_population(const DensityMatrix& rho) {
  const auto& space = rho.space();
  double tail = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const auto levels = space.unflatten(i);
    for (std::size_t k = 0; k < space.size(); ++k) {
      const auto& s = space.subsystem(k);
      if (s.kind == SubsystemKind::boson && levels[k] == static_cast<std::size_t>(s.n_max)) {
        tail += rho.matrix()(i, i).real();
      }
    }
  }
  return tail;
}

StateVector oracle_jc_state(double t, double g_alpha, const HilbertSpace& space, double alpha_phase) {
  if (space.size() != 2 || space.subsystem(0).kind != SubsystemKind::qubit ||
      space.subsystem(1).kind != SubsystemKind::boson) {
    throw ShapeError("oracle_jc_state: expected space nv (x) b");
  }
  std::vector<Complex> amps(space.dim());
  const std::size_t e0[] = {kExcited, 0};
  const std::size_t g1[] = {kGround, 1};
  amps[space.flatten(e0)] = std::cos(g_alpha * t);
  amps[space.flatten(g1)] = -kI * std::exp(kI * alpha_phase) * std::sin(g_alpha * t);
  return StateVector(space, std::move(amps));
}

namespace {

std::size_t ensemble_size(const HilbertSpace& space, const char* who) {
  const auto qubits = qubit_indices(space);
  if (qubits.empty() || qubits.size() + 1 != space.size() ||
      space.subsystem(space.size() - 1).kind != SubsystemKind::boson) {
    throw ShapeError(std::string(who) + ": expected space nv_1 .. nv_N (x) b");
  }
  return qubits.size();
}

}  // namespace

StateVector symmetric_excitation_state(const HilbertSpace& space) {
  return oracle_ensemble_state(0.0, 0.0, space);
}

StateVector oracle_ensemble_state(double t, double g_alpha, const HilbertSpace& space,
                                  double alpha_phase) {
  const std::size_t n = ensemble_size(space, "oracle_ensemble_state");
  const double omega = g_alpha * std::sqrt(static_cast<double>(n));
  std::vector<Complex> amps(space.dim());
  std::vector<std::size_t> levels(n + 1, kGround);
  levels[n] = 0;
  const double w = std::cos(omega * t) / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    levels[i] = kExcited;
    amps[space.flatten(levels)] = w;
    levels[i] = kGround;
  }
  levels[n] = 1;
  amps[space.flatten(levels)] = -kI * std::exp(kI * alpha_phase) * std::sin(omega * t);
  return StateVector(space, std::move(amps));
}

double d1_mean_sq_lossless(double xi, double delta_phase) {
  return (1.0 + 2.0 * (1.0 - std::cos(delta_phase)) * xi * xi - 2.0 * std::sin(delta_phase) * xi) / 4.0;
}

SqueezeOptimum oracle_d1_min(double delta_phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (!(delta_phase > 0.0 && delta_phase < two_pi) || 1.0 - std::cos(delta_phase) < 1e-14) {
    throw ParameterError("oracle_d1_min: delta_phase must lie in (0, 2pi); at 0 the variance has no minimum");
  }
  SqueezeOptimum opt{};
  const double one_minus_cos = 1.0 - std::cos(delta_phase);
  opt.xi_star = std::sin(delta_phase) / (2.0 * one_minus_cos);
  opt.min_value = one_minus_cos / 8.0;
  opt.truncation_valid = opt.xi_star >= 0.0 && opt.xi_star <= kMaxReliableXi;
  return opt;
}

}  // namespace nvmo
