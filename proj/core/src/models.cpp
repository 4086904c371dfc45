#include "nvmo/models.hpp"

#include <cmath>
#include <string>

#include "nvmo/errors.hpp"

namespace nvmo {

namespace {

bool is_boson(const HilbertSpace& s, std::size_t i) {
  return s.subsystem(i).kind == SubsystemKind::boson;
}

bool is_qubit(const HilbertSpace& s, std::size_t i) {
  return s.subsystem(i).kind == SubsystemKind::qubit;
}

// Checks that `space` is one qubit followed by `n_modes` bosons.
void require_nv_modes(const HilbertSpace& space, std::size_t n_modes, const char* who) {
  bool ok = space.size() == n_modes + 1 && is_qubit(space, 0);
  for (std::size_t i = 1; ok && i <= n_modes; ++i) ok = is_boson(space, i);
  if (!ok) {
    throw ShapeError(std::string(who) + ": expected space nv (x) " + std::to_string(n_modes) +
                     " boson mode(s)");
  }
}

void require_two_modes(const HilbertSpace& space, const char* who) {
  if (space.size() != 2 || !is_boson(space, 0) || !is_boson(space, 1)) {
    throw ShapeError(std::string(who) + ": expected space b (x) c of two boson modes");
  }
}

Complex require_alpha(const ModelParams& p, const char* who) {
  if (!p.alpha) throw ParameterError(std::string(who) + ": steady amplitude alpha is not set");
  return *p.alpha;
}

CMatrix mode_op(const HilbertSpace& space, std::size_t i) {
  return embed(annihilation(space.subsystem(i).n_max), i, space);
}

}  // namespace

void ModelParams::validate() const {
  const double rates[] = {gamma1, gamma2, gamma3, dephasing_rate, n_bath, n_init};
  const char* names[] = {"gamma1", "gamma2", "gamma3", "dephasing_rate", "n_bath", "n_init"};
  for (std::size_t i = 0; i < std::size(rates); ++i) {
    if (!(rates[i] >= 0.0) || !std::isfinite(rates[i])) {
      throw ParameterError(std::string(names[i]) + " must be finite and >= 0");
    }
  }
  const double freqs[] = {omega_z, delta, omega, Omega1, Omega2, g, delta_phase, spin_sign};
  for (double f : freqs) {
    if (!std::isfinite(f)) throw ParameterError("model parameters must be finite");
  }
  if (N < 1) throw ParameterError("N must be >= 1");
}

ModelParams scaled_rates(const ModelParams& p, double unit) {
  if (!(unit > 0.0) || !std::isfinite(unit)) throw ParameterError("scaled_rates: unit must be > 0");
  ModelParams s = p;
  for (double* f : {&s.omega_z, &s.delta, &s.omega, &s.Omega1, &s.Omega2, &s.g, &s.gamma1,
                    &s.gamma2, &s.gamma3, &s.dephasing_rate}) {
    *f /= unit;
  }
  return s;
}

SteadyState steady_state_amplitudes(const ModelParams& p) {
  if (p.gamma1 == 0.0) {
    throw ParameterError("steady_state_amplitudes: gamma1 == 0 leaves the driven mode a singular");
  }
  if (p.delta == 0.0 && p.gamma2 == 0.0) {
    throw ParameterError("steady_state_amplitudes: delta and gamma2 both zero, mode b has no fixed point");
  }
  SteadyState s;
  s.alpha = -kI * p.Omega1 / p.gamma1;
  s.beta = -(p.Omega2 / 2.0) / (p.delta - kI * p.gamma2 / 2.0);
  s.beta_approx = p.delta == 0.0 ? Complex{} : Complex{-p.Omega2 / (2.0 * p.delta), 0.0};
  s.beta_relative_diff = std::abs(s.beta) == 0.0 ? 0.0 : std::abs(s.beta - s.beta_approx) / std::abs(s.beta);
  return s;
}

MeanFieldRates mean_field_rates(const ModelParams& p, Complex a, Complex b) {
  return MeanFieldRates{
      -kI * p.Omega1 / 2.0 - (p.gamma1 / 2.0) * a,
      -kI * p.delta * b - kI * p.Omega2 / 2.0 - (p.gamma2 / 2.0) * b,
  };
}

TimeDependentOperator::TimeDependentOperator(CMatrix static_part, std::vector<Term> terms)
    : static_part_(std::move(static_part)), terms_(std::move(terms)) {
  if (!static_part_.is_square()) throw ShapeError("TimeDependentOperator: static part not square");
  for (const auto& t : terms_) {
    if (t.op.rows() != static_part_.rows() || t.op.cols() != static_part_.cols()) {
      throw ShapeError("TimeDependentOperator: term dimension mismatch");
    }
  }
}

CMatrix TimeDependentOperator::at(double t) const {
  CMatrix h = static_part_;
  for (const auto& term : terms_) {
    const Complex phase = std::exp(kI * term.frequency * t);
    const std::size_t n = h.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        h(i, j) += phase * term.op(i, j) + std::conj(phase * term.op(j, i));
      }
    }
  }
  return h;
}

SplitHamiltonian build_H_lab(const ModelParams& p, const HilbertSpace& space) {
  require_nv_modes(space, 2, "build_H_lab");
  const auto q = qubit_ops();
  const CMatrix a = mode_op(space, 1);
  const CMatrix b = mode_op(space, 2);
  const CMatrix ad = adjoint(a);
  const CMatrix bd = adjoint(b);
  const CMatrix sz = embed(q.sigma_z, 0, space);
  const CMatrix sx = embed(q.sigma_x, 0, space);

  SplitHamiltonian h;
  h.h0 = (p.omega_z / 2.0) * sz;
  h.h0.axpy(p.delta, matmul(bd, b));
  h.h0.axpy(p.Omega1 / 2.0, a + ad);
  h.h0.axpy(p.Omega2 / 2.0, b + bd);

  CMatrix k = matmul(ad, a) + matmul(bd, b) + matmul(ad, b) + matmul(bd, a);
  h.h1 = p.g * matmul(k, sx);
  return h;
}

SplitHamiltonian build_H_displaced(const ModelParams& p, const HilbertSpace& space) {
  require_nv_modes(space, 2, "build_H_displaced");
  const Complex alpha = require_alpha(p, "build_H_displaced");
  if (!p.beta) throw ParameterError("build_H_displaced: steady amplitude beta is not set");
  const Complex beta = *p.beta;

  const auto q = qubit_ops();
  const CMatrix id = CMatrix::identity(space.dim());
  const CMatrix a = mode_op(space, 1) + alpha * id;  // a + alpha
  const CMatrix b = mode_op(space, 2) + beta * id;   // b + beta
  const CMatrix ad = adjoint(a);
  const CMatrix bd = adjoint(b);
  const CMatrix b_bare = mode_op(space, 2);

  SplitHamiltonian h;
  h.h0 = (p.omega_z / 2.0) * embed(q.sigma_z, 0, space);
  h.h0.axpy(p.delta, matmul(adjoint(b_bare), b_bare));

  CMatrix k = matmul(ad, a) + matmul(bd, b) + matmul(ad, b) + matmul(bd, a);
  h.h1 = p.g * matmul(k, embed(q.sigma_x, 0, space));
  return h;
}

CMatrix build_H_effective_JC(const ModelParams& p, const HilbertSpace& space) {
  require_nv_modes(space, 1, "build_H_effective_JC");
  const Complex alpha = require_alpha(p, "build_H_effective_JC");
  const auto q = qubit_ops();
  const CMatrix b = mode_op(space, 1);
  const CMatrix sp = embed(q.sigma_plus, 0, space);
  CMatrix h = (p.g * std::conj(alpha)) * matmul(b, sp);
  h.axpy(p.g * alpha, matmul(adjoint(b), adjoint(sp)));
  return h;
}

CMatrix build_H_ensemble(const ModelParams& p, const HilbertSpace& space) {
  const auto qubits = qubit_indices(space);
  const std::size_t mode = space.size() - 1;
  if (space.size() < 2 || qubits.size() != space.size() - 1 || !is_boson(space, mode)) {
    throw ShapeError("build_H_ensemble: expected space nv_1 .. nv_N (x) one boson mode");
  }
  if (static_cast<int>(qubits.size()) > kMaxDenseEnsemble) {
    throw CapacityError("build_H_ensemble: N = " + std::to_string(qubits.size()) +
                        " exceeds the dense limit of " + std::to_string(kMaxDenseEnsemble) +
                        "; use oracle_ensemble_state for larger ensembles");
  }
  const Complex alpha = require_alpha(p, "build_H_ensemble");
  const CMatrix b = mode_op(space, mode);
  const CMatrix jp = collective_raising(space, qubits);
  CMatrix h = (p.g * std::conj(alpha)) * matmul(b, jp);
  h.axpy(p.g * alpha, matmul(adjoint(b), adjoint(jp)));
  return h;
}

SplitHamiltonian build_H_squeeze_full(const ModelParams& p, const HilbertSpace& space) {
  require_nv_modes(space, 3, "build_H_squeeze_full");
  const auto q = qubit_ops();
  const CMatrix a = mode_op(space, 1);
  const CMatrix b = mode_op(space, 2);
  const CMatrix c = mode_op(space, 3);
  const CMatrix ad = adjoint(a);
  const CMatrix bd = adjoint(b);
  const CMatrix cd = adjoint(c);

  SplitHamiltonian h;
  h.h0 = (p.omega_z / 2.0) * embed(q.sigma_z, 0, space);
  h.h0.axpy(p.delta, matmul(bd, b));
  h.h0.axpy(-p.delta, matmul(cd, c));
  h.h0.axpy(p.Omega1 / 2.0, a + ad);
  h.h0.axpy(p.Omega2 / 2.0, b + bd);
  h.h0.axpy(p.Omega2 / 2.0, c + cd);

  CMatrix k = matmul(ad, a) + matmul(bd, b) + matmul(cd, c);
  k += matmul(ad, b) + matmul(bd, a);
  k += matmul(ad, c) + matmul(cd, a);
  k += matmul(bd, c) + matmul(cd, b);
  h.h1 = p.g * matmul(k, embed(q.sigma_x, 0, space));
  return h;
}

TimeDependentOperator build_H_SI(const ModelParams& p, const HilbertSpace& space) {
  require_nv_modes(space, 2, "build_H_SI");
  const Complex alpha = require_alpha(p, "build_H_SI");
  const auto q = qubit_ops();
  const CMatrix sp = embed(q.sigma_plus, 0, space);
  const CMatrix b = mode_op(space, 1);
  const CMatrix c = mode_op(space, 2);

  // Each term carries its own Hermitian conjugate: alpha b^dag s- and alpha c s-.
  std::vector<TimeDependentOperator::Term> terms;
  terms.push_back({(p.g * std::conj(alpha)) * matmul(b, sp), p.omega});
  terms.push_back({(p.g * std::conj(alpha)) * matmul(adjoint(c), sp), p.omega});
  return TimeDependentOperator(CMatrix(space.dim(), space.dim()), std::move(terms));
}

double squeeze_rate(const ModelParams& p) {
  const Complex alpha = require_alpha(p, "squeeze_rate");
  if (p.omega == 0.0) {
    throw ParameterError("squeeze_rate: omega == 0 puts the NV on resonance, eta diverges");
  }
  return std::norm(alpha) * p.g * p.g * p.spin_sign / p.omega;
}

CMatrix build_H_squeeze_eff(const ModelParams& p, const HilbertSpace& space) {
  require_two_modes(space, "build_H_squeeze_eff");
  const double eta = squeeze_rate(p);
  const CMatrix b = mode_op(space, 0);
  const CMatrix c = mode_op(space, 1);
  const CMatrix bd = adjoint(b);
  const CMatrix cd = adjoint(c);
  CMatrix h = matmul(bd, b) + matmul(cd, c) + matmul(b, c) + matmul(cd, bd);
  return eta * h;
}

CollectiveModeOps collective_mode_ops(const HilbertSpace& space, double delta_phase) {
  require_two_modes(space, "collective_mode_ops");
  const CMatrix b = mode_op(space, 0);
  const CMatrix c = mode_op(space, 1);
  CollectiveModeOps ops;
  ops.d = (1.0 / std::sqrt(2.0)) * (b + std::exp(-kI * delta_phase) * c);
  ops.d_dag = adjoint(ops.d);
  ops.d1 = 0.5 * (ops.d + ops.d_dag);
  ops.d2 = (1.0 / (2.0 * kI)) * (ops.d - ops.d_dag);
  return ops;
}

}  // namespace nvmo
