#include "nvmo/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "nvmo/errors.hpp"

namespace nvmo {

namespace {

Complex expectation_dense(const CMatrix& rho, const CMatrix& op) {
  // tr(rho O) = sum_ij rho_ij O_ji
  Complex acc{};
  const std::size_t n = rho.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex* ri = rho.row(i);
    for (std::size_t j = 0; j < n; ++j) acc += ri[j] * op(j, i);
  }
  return acc;
}

Complex expectation_pure(std::span<const Complex> psi, const CMatrix& op) {
  return inner(psi, matvec(op, psi));
}

std::size_t step_count(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("evolution: dt must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ParameterError("evolution: t_final must be >= 0");
  }
  if (t_final == 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Certified lower bound on lambda_min via shifted Cholesky attempts.
double certify_min_eigenvalue(const CMatrix& rho) {
  for (double shift : {1e-9, 1e-7, 1e-5, 1e-3}) {
    if (is_positive_definite_shifted(rho, shift)) return -shift;
  }
  return -std::numeric_limits<double>::infinity();
}

void require_operator_dims(const Hamiltonian& h, const std::vector<LindbladTerm>& terms,
                           std::size_t dim) {
  if (dimension(h) != dim) throw ShapeError("evolution: Hamiltonian does not match state dimension");
  for (const auto& term : terms) {
    if (term.collapse.rows() != dim || term.collapse.cols() != dim) {
      throw ShapeError("evolution: collapse operator '" + term.label + "' has wrong dimension");
    }
    if (!(term.rate >= 0.0)) throw ParameterError("LindbladTerm '" + term.label + "' has negative rate");
  }
}

}  // namespace

CMatrix evaluate(const Hamiltonian& h, double t) {
  return std::visit(
      [t](const auto& op) -> CMatrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(op)>, CMatrix>) {
          return op;
        } else {
          return op.at(t);
        }
      },
      h);
}

std::size_t dimension(const Hamiltonian& h) {
  return std::visit(
      [](const auto& op) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(op)>, CMatrix>) {
          return op.rows();
        } else {
          return op.dim();
        }
      },
      h);
}

std::size_t Trajectory::index_near(double t) const {
  if (times.empty()) throw ParameterError("Trajectory::index_near: empty trajectory");
  std::size_t best = 0;
  for (std::size_t i = 1; i < times.size(); ++i)
    if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
  return best;
}

const DensityMatrix& Trajectory::final_density() const {
  if (const auto* rho = std::get_if<DensityMatrix>(&final_state)) return *rho;
  throw ParameterError("Trajectory: final state is not a density matrix");
}

const StateVector& Trajectory::final_pure() const {
  if (const auto* psi = std::get_if<StateVector>(&final_state)) return *psi;
  throw ParameterError("Trajectory: final state is not a state vector");
}

CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const std::vector<LindbladTerm>& terms) {
  if (!rho.is_square() || h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw ShapeError("lindblad_rhs: Hamiltonian and state dimensions differ");
  }
  CMatrix out = -kI * commutator(h, rho);
  for (const auto& term : terms) {
    if (term.collapse.rows() != rho.rows() || term.collapse.cols() != rho.cols()) {
      throw ShapeError("lindblad_rhs: collapse operator '" + term.label + "' has wrong dimension");
    }
    const CMatrix& o = term.collapse;
    const CMatrix od = adjoint(o);
    const CMatrix odo = matmul(od, o);
    CMatrix l = 2.0 * matmul(matmul(o, rho), od);
    l -= matmul(odo, rho);
    l -= matmul(rho, odo);
    out.axpy(term.rate / 2.0, l);
  }
  return out;
}

CMatrix lindblad_rhs(const DensityMatrix& rho, const CMatrix& h,
                     const std::vector<LindbladTerm>& terms) {
  return lindblad_rhs(rho.matrix(), h, terms);
}

LindbladGenerator::LindbladGenerator(const Hamiltonian& h, const std::vector<LindbladTerm>& terms)
    : dim_(dimension(h)) {
  require_operator_dims(h, terms, dim_);
  damping_ = CMatrix(dim_, dim_);
  for (const auto& term : terms) {
    if (term.rate == 0.0) continue;
    const SparseMatrix op = SparseMatrix::from_dense(term.collapse);
    jumps_.push_back(Jump{op, op.adjoint(), term.rate});
    damping_.axpy(term.rate / 2.0, matmul(adjoint(term.collapse), term.collapse));
  }
  if (const auto* td = std::get_if<TimeDependentOperator>(&h)) {
    td_ = *td;
  } else {
    const CMatrix h_eff = std::get<CMatrix>(h) - kI * damping_;
    h_eff_ = SparseMatrix::from_dense(h_eff);
    h_eff_adj_ = h_eff_.adjoint();
  }
}

void LindbladGenerator::apply(double t, const CMatrix& rho, CMatrix& out) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ShapeError("LindbladGenerator: state dimension");
  if (out.rows() != dim_ || out.cols() != dim_) {
    out = CMatrix(dim_, dim_);
  } else {
    out.set_zero();
  }
  if (td_) {
    const SparseMatrix h_eff = SparseMatrix::from_dense(td_->at(t) - kI * damping_);
    h_eff.multiply_add(rho, -kI, out);
    h_eff.adjoint().right_multiply_add(rho, kI, out);
  } else {
    h_eff_.multiply_add(rho, -kI, out);
    h_eff_adj_.right_multiply_add(rho, kI, out);
  }
  if (jumps_.empty()) return;
  if (scratch_.rows() != dim_) scratch_ = CMatrix(dim_, dim_);
  for (const auto& jump : jumps_) {
    scratch_.set_zero();
    jump.op.multiply_add(rho, 1.0, scratch_);
    jump.op_adj.right_multiply_add(scratch_, jump.rate, out);
  }
}

Trajectory evolve_master(const DensityMatrix& rho0, const EvolutionSpec& spec) {
  const std::size_t dim = rho0.dim();
  require_operator_dims(spec.hamiltonian, spec.terms, dim);
  if (spec.record_every == 0) throw ParameterError("evolve_master: record_every must be >= 1");
  for (const auto& obs : spec.observables) {
    if (obs.op.rows() != dim || obs.op.cols() != dim) {
      throw ShapeError("evolve_master: observable '" + obs.name + "' has wrong dimension");
    }
  }
  const std::size_t n_steps = step_count(spec.t_final, spec.dt);
  const auto& tol = spec.tol;
  const LindbladGenerator gen(spec.hamiltonian, spec.terms);

  Trajectory traj;
  bool warned_trace = false;
  bool warned_eig = false;
  CMatrix rho = rho0.matrix();

  auto record = [&](double t) {
    traj.times.push_back(t);
    const double dev = std::abs(trace(rho) - 1.0);
    traj.trace_deviation.push_back(dev);
    if (dev > tol.trace_warn && !warned_trace) {
      traj.warnings.push_back("trace deviation " + fmt(dev) + " at t = " + fmt(t));
      warned_trace = true;
    }
    for (const auto& obs : spec.observables) {
      traj.observables[obs.name].push_back(expectation_dense(rho, obs.op));
    }
    if (spec.check_positivity) {
      const double bound = certify_min_eigenvalue(rho);
      traj.min_eig_bound.push_back(bound);
      if (bound < tol.min_eig_fail) {
        throw IntegratorFailure("evolve_master: density matrix lost positivity (lambda_min < " +
                                fmt(tol.min_eig_fail) + ") at t = " + fmt(t) +
                                "; reduce dt");
      }
      if (bound < tol.min_eig_warn && !warned_eig) {
        traj.warnings.push_back("min eigenvalue may be below " + fmt(tol.min_eig_warn) + " at t = " + fmt(t));
        warned_eig = true;
      }
    }
    if (!spec.probes.empty()) {
      const DensityMatrix view = DensityMatrix::from_evolved(rho0.space(), rho);
      for (const auto& [name, probe] : spec.probes) traj.probes[name].push_back(probe(t, view));
    }
  };

  record(0.0);
  CMatrix k1, k2, k3, k4;
  CMatrix stage(dim, dim);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const double t0 = static_cast<double>(step - 1) * spec.dt;
    const double h = step == n_steps ? spec.t_final - t0 : spec.dt;

    gen.apply(t0, rho, k1);
    stage = rho;
    stage.axpy(h / 2.0, k1);
    gen.apply(t0 + h / 2.0, stage, k2);
    stage = rho;
    stage.axpy(h / 2.0, k2);
    gen.apply(t0 + h / 2.0, stage, k3);
    stage = rho;
    stage.axpy(h, k3);
    gen.apply(t0 + h, stage, k4);

    rho.axpy(h / 6.0, k1);
    rho.axpy(h / 3.0, k2);
    rho.axpy(h / 3.0, k3);
    rho.axpy(h / 6.0, k4);
    // Measured before symmetrizing so the reported value is the step's own error.
    traj.max_hermiticity_error = std::max(traj.max_hermiticity_error, hermiticity_error(rho));
    symmetrize(rho);

    const double t = step == n_steps ? spec.t_final : static_cast<double>(step) * spec.dt;
    if (!all_finite(rho)) {
      throw IntegratorFailure("evolve_master: non-finite state at t = " + fmt(t) + "; reduce dt");
    }
    const double dev = std::abs(trace(rho) - 1.0);
    if (dev > tol.trace_fail) {
      throw IntegratorFailure("evolve_master: trace drift " + fmt(dev) + " at t = " + fmt(t) +
                              " exceeds " + fmt(tol.trace_fail) + "; reduce dt");
    }
    if (step % spec.record_every == 0 || step == n_steps) record(t);
  }
  traj.steps = n_steps;
  traj.final_state = DensityMatrix::from_evolved(rho0.space(), std::move(rho));
  return traj;
}

Trajectory evolve_pure(const StateVector& psi0, const PureEvolutionSpec& spec) {
  const std::size_t dim = psi0.dim();
  if (dimension(spec.hamiltonian) != dim) {
    throw ShapeError("evolve_pure: Hamiltonian does not match state dimension");
  }
  if (spec.record_every == 0) throw ParameterError("evolve_pure: record_every must be >= 1");
  const std::size_t n_steps = step_count(spec.t_final, spec.dt);
  const auto& tol = spec.tol;

  const auto* td = std::get_if<TimeDependentOperator>(&spec.hamiltonian);
  SparseMatrix h_static;
  if (!td) h_static = SparseMatrix::from_dense(std::get<CMatrix>(spec.hamiltonian));

  // out = -i H(t) x
  auto deriv = [&](double t, std::span<const Complex> x, std::vector<Complex>& out) {
    out.assign(dim, Complex{});
    if (td) {
      SparseMatrix::from_dense(td->at(t)).multiply_add(x, -kI, out);
    } else {
      h_static.multiply_add(x, -kI, out);
    }
  };

  Trajectory traj;
  std::vector<Complex> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  bool warned = false;
  double last_drift = 0.0;

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.trace_deviation.push_back(last_drift);
    for (const auto& obs : spec.observables) {
      traj.observables[obs.name].push_back(expectation_pure(psi, obs.op));
    }
    if (!spec.probes.empty()) {
      const StateVector view(psi0.space(), psi);
      for (const auto& [name, probe] : spec.probes) traj.probes[name].push_back(probe(t, view));
    }
  };

  record(0.0);
  std::vector<Complex> k1, k2, k3, k4, stage(dim);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const double t0 = static_cast<double>(step - 1) * spec.dt;
    const double h = step == n_steps ? spec.t_final - t0 : spec.dt;
    deriv(t0, psi, k1);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + (h / 2.0) * k1[i];
    deriv(t0 + h / 2.0, stage, k2);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + (h / 2.0) * k2[i];
    deriv(t0 + h / 2.0, stage, k3);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = psi[i] + h * k3[i];
    deriv(t0 + h, stage, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    const double t = step == n_steps ? spec.t_final : static_cast<double>(step) * spec.dt;
    const double nrm = norm(psi);
    if (!std::isfinite(nrm)) throw IntegratorFailure("evolve_pure: non-finite state at t = " + fmt(t));
    last_drift = std::abs(nrm * nrm - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, last_drift);
    if (last_drift > tol.norm_drift_fail) {
      throw IntegratorFailure("evolve_pure: norm drift " + fmt(last_drift) + " in one step at t = " +
                              fmt(t) + "; reduce dt");
    }
    if (last_drift > tol.norm_drift_warn && !warned) {
      traj.warnings.push_back("per-step norm drift " + fmt(last_drift) + " at t = " + fmt(t));
      warned = true;
    }
    for (auto& v : psi) v /= nrm;
    if (step % spec.record_every == 0 || step == n_steps) record(t);
  }
  traj.steps = n_steps;
  traj.final_state = StateVector(psi0.space(), std::move(psi));
  return traj;
}

Trajectory evolve_pure(const StateVector& psi0, const Hamiltonian& h, double t_final, double dt) {
  PureEvolutionSpec spec;
  spec.hamiltonian = h;
  spec.t_final = t_final;
  spec.dt = dt;
  return evolve_pure(psi0, spec);
}

namespace {

std::size_t last_boson(const HilbertSpace& space, const char* who) {
  for (std::size_t i = space.size(); i-- > 0;)
    if (space.subsystem(i).kind == SubsystemKind::boson) return i;
  throw ShapeError(std::string(who) + ": space has no boson mode");
}

void push_mode_terms(std::vector<LindbladTerm>& out, const CMatrix& b, double gamma, double n_bath,
                     const std::string& name, bool heating_as_decay) {
  if (gamma == 0.0) return;
  out.push_back({b, gamma * (n_bath + 1.0), "decay_" + name});
  if (n_bath == 0.0) return;
  if (heating_as_decay) {
    out.push_back({b, gamma * n_bath, "heating_" + name + "_as_decay"});
  } else {
    out.push_back({adjoint(b), gamma * n_bath, "heating_" + name});
  }
}

}  // namespace

std::vector<LindbladTerm> bath_terms_single(const ModelParams& p, const HilbertSpace& space) {
  const auto qubits = qubit_indices(space);
  if (qubits.size() != 1) throw ShapeError("bath_terms_single: expected exactly one NV");
  const std::size_t mode = last_boson(space, "bath_terms_single");
  std::vector<LindbladTerm> terms;
  push_mode_terms(terms, embed(annihilation(space.subsystem(mode).n_max), mode, space), p.gamma2,
                  p.n_bath, "b", false);
  if (p.dephasing_rate > 0.0) {
    terms.push_back({embed(qubit_ops().sigma_z, qubits[0], space), p.dephasing_rate, "dephasing_nv"});
  }
  return terms;
}

std::vector<LindbladTerm> bath_terms_ensemble(const ModelParams& p, const HilbertSpace& space) {
  const auto qubits = qubit_indices(space);
  if (qubits.empty()) throw ShapeError("bath_terms_ensemble: space has no NV");
  if (static_cast<int>(qubits.size()) > kMaxDenseEnsemble) {
    throw CapacityError("bath_terms_ensemble: N = " + std::to_string(qubits.size()) +
                        " exceeds the dense limit of " + std::to_string(kMaxDenseEnsemble));
  }
  const std::size_t mode = last_boson(space, "bath_terms_ensemble");
  std::vector<LindbladTerm> terms;
  push_mode_terms(terms, embed(annihilation(space.subsystem(mode).n_max), mode, space), p.gamma2,
                  p.n_bath, "b", false);
  if (p.dephasing_rate > 0.0) {
    const auto sz = qubit_ops().sigma_z;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      terms.push_back({embed(sz, qubits[i], space), p.dephasing_rate,
                       "dephasing_nv" + std::to_string(i + 1)});
    }
  }
  return terms;
}

std::vector<LindbladTerm> bath_terms_squeeze(const ModelParams& p, const HilbertSpace& space,
                                             bool heating_as_decay) {
  if (space.size() != 2 || space.subsystem(0).kind != SubsystemKind::boson ||
      space.subsystem(1).kind != SubsystemKind::boson) {
    throw ShapeError("bath_terms_squeeze: expected space b (x) c");
  }
  std::vector<LindbladTerm> terms;
  push_mode_terms(terms, embed(annihilation(space.subsystem(0).n_max), 0, space), p.gamma2, p.n_bath,
                  "b", heating_as_decay);
  push_mode_terms(terms, embed(annihilation(space.subsystem(1).n_max), 1, space), p.gamma3, p.n_bath,
                  "c", heating_as_decay);
  return terms;
}

}  // namespace nvmo
