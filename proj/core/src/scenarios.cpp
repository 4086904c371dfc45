#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "nvmo/dynamics.hpp"
#include "nvmo/errors.hpp"
#include "nvmo/observables.hpp"
#include "nvmo/runner.hpp"

namespace nvmo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int default_n_max(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::ensemble: return 4;
    case ScenarioKind::squeeze: return 12;
    default: return 8;
  }
}

double default_t_final(ScenarioKind kind) {
  return kind == ScenarioKind::squeeze ? 0.75 : kPi;
}

// dt shrunk so that `mark` lands exactly on the step grid.
std::pair<double, std::size_t> snap_dt(double mark, double dt) {
  const auto steps = static_cast<std::size_t>(std::ceil(mark / dt - 1e-9));
  return {mark / static_cast<double>(std::max<std::size_t>(steps, 1)), std::max<std::size_t>(steps, 1)};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void absorb_diagnostics(RunResult& r, const Trajectory& traj) {
  for (double d : traj.trace_deviation) r.max_trace_deviation = std::max(r.max_trace_deviation, d);
  r.max_hermiticity_error = std::max(r.max_hermiticity_error, traj.max_hermiticity_error);
  for (double b : traj.min_eig_bound) r.min_eig_bound = std::min(r.min_eig_bound, b);
  r.warnings.insert(r.warnings.end(), traj.warnings.begin(), traj.warnings.end());
}

template <typename F>
auto with_context(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const IntegratorFailure& e) {
    throw IntegratorFailure(name + ": " + e.what());
  }
}

double alpha_abs(const ModelParams& p) { return p.alpha ? std::abs(*p.alpha) : 0.0; }
double alpha_arg(const ModelParams& p) { return p.alpha ? std::arg(*p.alpha) : 0.0; }

void warn_truncation(RunResult& r, double n_init, int n_max, const std::string& what) {
  const double err = thermal_truncation_error(n_init, n_max);
  if (err > default_tolerances().tail_population) {
    r.warnings.push_back(what + ": thermal weight beyond n_max = " + std::to_string(n_max) +
                         " is " + std::to_string(err) + "; raise n_max");
  }
}

HilbertSpace qubit_register(int n) {
  std::vector<SubsystemSpec> subs;
  for (int i = 0; i < n; ++i) subs.push_back(SubsystemSpec::qubit("nv" + std::to_string(i + 1)));
  return HilbertSpace(std::move(subs));
}

StateVector w_state(const HilbertSpace& qubits) {
  const std::size_t n = qubits.size();
  std::vector<Complex> amps(qubits.dim());
  std::vector<std::size_t> levels(n, kGround);
  for (std::size_t i = 0; i < n; ++i) {
    levels[i] = kExcited;
    amps[qubits.flatten(levels)] = 1.0 / std::sqrt(static_cast<double>(n));
    levels[i] = kGround;
  }
  return StateVector(qubits, std::move(amps));
}

// Zero crossings of a sampled cos(w t); the period is twice their spacing.
double period_from_crossings(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> crossings;
  for (std::size_t k = 1; k < y.size() && crossings.size() < 2; ++k) {
    if ((y[k - 1] > 0.0) != (y[k] > 0.0)) {
      const double frac = y[k - 1] / (y[k - 1] - y[k]);
      crossings.push_back(t[k - 1] + frac * (t[k] - t[k - 1]));
    }
  }
  if (crossings.size() < 2) return kNaN;
  return 2.0 * (crossings[1] - crossings[0]);
}

RunResult run_jc(const Scenario& s, const std::string& name) {
  s.validate();
  RunResult r;
  const auto& p = s.params;
  const auto& num = s.numerics;
  const HilbertSpace space({SubsystemSpec::qubit("nv"), SubsystemSpec::boson(num.n_max, "b")});
  warn_truncation(r, p.n_init, num.n_max, name);

  const std::size_t e_level[] = {kExcited};
  const auto nv = DensityMatrix::from_pure(basis_product_state(HilbertSpace({SubsystemSpec::qubit("nv")}), e_level));
  const DensityMatrix rho0 = tensor(nv, thermal_state(p.n_init, num.n_max));

  const double g_alpha = p.g * alpha_abs(p);
  const double phase = alpha_arg(p);
  const double tau_quarter = (kPi / 4.0) / g_alpha;
  EvolutionSpec spec;
  spec.hamiltonian = build_H_effective_JC(p, space);
  spec.terms = bath_terms_single(p, space);
  spec.t_final = num.t_final / g_alpha;
  spec.dt = snap_dt(tau_quarter, num.dt / g_alpha).first;
  spec.record_every = num.record_every;
  spec.observables.push_back({"n_phonon", embed(number_operator(num.n_max), 1, space)});
  const BipartiteSplit split{space, {0}};
  spec.probes.emplace_back("negativity", [split](double, const DensityMatrix& rho) { return negativity(rho, split); });
  spec.probes.emplace_back("fidelity", [space, g_alpha, phase](double t, const DensityMatrix& rho) {
    return fidelity_pure(oracle_jc_state(t, g_alpha, space, phase), rho);
  });

  const Trajectory traj = with_context(name, [&] { return evolve_master(rho0, spec); });
  absorb_diagnostics(r, traj);

  r.table.columns = {"t", "negativity", "fidelity", "trace_dev", "n_phonon"};
  const auto& neg = traj.probes.at("negativity");
  const auto& fid = traj.probes.at("fidelity");
  const auto& nph = traj.observables.at("n_phonon");
  std::size_t arg_max = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    r.table.rows.push_back({traj.times[k] * g_alpha, neg[k], fid[k], traj.trace_deviation[k], nph[k].real()});
    // Lossless runs revisit the same peak every half period; report the first one.
    if (neg[k] > neg[arg_max] + 1e-9) arg_max = k;
  }

  auto fidelity_at = [&](double tau) {
    const double t = tau / g_alpha;
    if (t > spec.t_final * (1.0 + 1e-12)) return kNaN;
    const std::size_t k = traj.index_near(t);
    return std::abs(traj.times[k] - t) <= 1e-9 * std::max(1.0, t) ? fid[k] : kNaN;
  };
  r.summary = {
      {"max_negativity", neg[arg_max]},
      {"tau_max_negativity", traj.times[arg_max] * g_alpha},
      {"fidelity_transfer", fidelity_at(kPi / 2.0)},
      {"fidelity_entangle", fidelity_at(kPi / 4.0)},
      {"dt_effective", spec.dt * g_alpha},
      {"max_trace_dev", r.max_trace_deviation},
      {"min_eig_bound", r.min_eig_bound},
  };
  return r;
}

}  // namespace

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "entangle") return ScenarioKind::entangle;
  if (name == "transfer") return ScenarioKind::transfer;
  if (name == "ensemble") return ScenarioKind::ensemble;
  if (name == "squeeze") return ScenarioKind::squeeze;
  if (name == "sweep") return ScenarioKind::sweep;
  throw ConfigError("unknown scenario '" + name + "' (expected entangle, transfer, ensemble, squeeze or sweep)");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::entangle: return "entangle";
    case ScenarioKind::transfer: return "transfer";
    case ScenarioKind::ensemble: return "ensemble";
    case ScenarioKind::squeeze: return "squeeze";
    case ScenarioKind::sweep: return "sweep";
  }
  return "?";
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "g_hz", "alpha_abs", "alpha_phase", "omega1_hz", "gamma1_hz", "gamma2_over_g",
      "gamma3_over_g", "dephasing_over_g", "n_bath", "n_init", "N_values", "delta_phase",
      "omega_over_g", "spin_sign", "n_max", "dt", "t_final", "record_every",
      "heating_as_decay", "report_runtime", "sweep_scenario", "sweep_axis", "sweep_values",
      "out", "format",
  };
  return keys;
}

namespace {

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "g_hz", "alpha_abs", "alpha_phase", "omega1_hz", "gamma1_hz", "gamma2_over_g", "gamma3_over_g",
      "dephasing_over_g", "n_bath", "n_init", "delta_phase", "omega_over_g", "spin_sign",
      "n_max", "dt", "t_final",
  };
  return keys;
}

}  // namespace

void Scenario::validate() const {
  params.validate();
  if (numerics.n_max < 1) throw ConfigError("n_max must be >= 1");
  if (!(numerics.dt > 0.0)) throw ConfigError("dt must be positive");
  if (numerics.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (kind != ScenarioKind::ensemble && kind != ScenarioKind::sweep && !(numerics.t_final > 0.0)) {
    throw ConfigError("t_final must be positive");
  }
  if (output.format != "csv") throw ConfigError("unsupported output format '" + output.format + "'");
  if (kind != ScenarioKind::squeeze && kind != ScenarioKind::sweep && !params.alpha) {
    throw ConfigError("alpha is not set");
  }
  if (kind == ScenarioKind::ensemble) {
    if (n_values.empty()) throw ConfigError("N_values is empty");
    for (int n : n_values) {
      if (n < 1) throw ConfigError("N_values entries must be >= 1");
    }
  }
  if (kind == ScenarioKind::sweep) {
    if (sweep_target == ScenarioKind::sweep || sweep_target == ScenarioKind::ensemble) {
      throw ConfigError("sweep_scenario must be entangle, transfer or squeeze");
    }
    const auto& keys = sweepable_keys();
    if (std::find(keys.begin(), keys.end(), sweep_axis) == keys.end()) {
      throw ConfigError("unknown sweep axis '" + sweep_axis + "'");
    }
    if (sweep_values.empty()) throw ConfigError("sweep_values is empty");
  }
}

Scenario scenario_from_config(ScenarioKind kind, const Config& cfg) {
  cfg.require_known(known_config_keys());
  Scenario s;
  s.kind = kind;
  s.source = cfg;
  s.output.path = cfg.get_string("out", "");
  s.output.format = cfg.get_string("format", "csv");
  s.heating_as_decay = cfg.get_bool("heating_as_decay", false);
  s.report_runtime = cfg.get_bool("report_runtime", true);

  if (kind == ScenarioKind::sweep) {
    s.sweep_target = parse_scenario_kind(cfg.get_string("sweep_scenario", "squeeze"));
    s.sweep_axis = cfg.get_string("sweep_axis", "");
    s.sweep_values = cfg.get_list("sweep_values", {});
    if (s.sweep_target == ScenarioKind::sweep || s.sweep_target == ScenarioKind::ensemble) {
      throw ConfigError("sweep_scenario must be entangle, transfer or squeeze");
    }
  }
  const ScenarioKind physics = kind == ScenarioKind::sweep ? s.sweep_target : kind;

  s.numerics.n_max = cfg.get_int("n_max", default_n_max(physics));
  s.numerics.dt = cfg.get_double("dt", 1e-3);
  s.numerics.t_final = cfg.get_double("t_final", default_t_final(physics));
  const int record_every = cfg.get_int("record_every", 1);
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  s.numerics.record_every = static_cast<std::size_t>(record_every);

  for (double n : cfg.get_list("N_values", {1, 2, 3, 4, 5})) {
    if (n != std::floor(n)) throw ConfigError("N_values entries must be integers");
    s.n_values.push_back(static_cast<int>(n));
  }

  // SI angular rates first.
  const double two_pi = 2.0 * kPi;
  const double g = two_pi * cfg.get_double("g_hz", 5.0);
  if (!(g > 0.0)) throw ConfigError("g_hz must be positive");
  ModelParams p;
  p.g = g;
  p.gamma2 = cfg.get_double("gamma2_over_g", 5.0) * g;
  p.gamma3 = cfg.get_double("gamma3_over_g", cfg.get_double("gamma2_over_g", 5.0)) * g;
  p.dephasing_rate = cfg.get_double("dephasing_over_g", 50.0) * g;
  p.omega = cfg.get_double("omega_over_g", 1e6) * g;
  p.n_bath = cfg.get_double("n_bath", 20.0);
  p.n_init = cfg.get_double("n_init", 0.0);
  p.delta_phase = cfg.get_double("delta_phase", kPi / 2.0);
  p.spin_sign = cfg.get_double("spin_sign", 1.0);

  const auto omega1 = cfg.get_optional_double("omega1_hz");
  const auto gamma1 = cfg.get_optional_double("gamma1_hz");
  if (omega1.has_value() != gamma1.has_value()) {
    throw ConfigError("omega1_hz and gamma1_hz must be given together");
  }
  if (omega1) {
    ModelParams drive;
    drive.Omega1 = two_pi * *omega1;
    drive.gamma1 = two_pi * *gamma1;
    drive.delta = 1.0;  // mode b plays no part in alpha
    p.alpha = steady_state_amplitudes(drive).alpha;
    if (const auto given = cfg.get_optional_double("alpha_abs")) {
      if (std::abs(*given - std::abs(*p.alpha)) > 1e-9 * std::abs(*p.alpha)) {
        throw ConfigError("alpha_abs disagrees with omega1_hz / gamma1_hz");
      }
    }
  } else {
    const double a = cfg.get_double("alpha_abs", 50000.0);
    if (!(a > 0.0)) throw ConfigError("alpha_abs must be positive");
    p.alpha = std::polar(a, cfg.get_double("alpha_phase", -kPi / 2.0));
  }
  const double a_abs = std::abs(*p.alpha);

  s.units.g_rad_per_s = g;
  s.units.alpha_abs = a_abs;
  if (physics == ScenarioKind::squeeze) {
    if (!(p.omega > 0.0)) throw ConfigError("omega_over_g must be positive");
    s.units.unit_rad_per_s = std::abs(squeeze_rate(p));
    s.units.unit_name = "eta";
  } else {
    s.units.unit_rad_per_s = g * a_abs;
    s.units.unit_name = "g|alpha|";
  }
  try {
    s.params = scaled_rates(p, s.units.unit_rad_per_s);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  try {
    s.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

double RunResult::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw Error("summary has no entry '" + key + "'");
}

RunResult run_entangle(const Scenario& s) { return run_jc(s, "entangle"); }
RunResult run_transfer(const Scenario& s) { return run_jc(s, "transfer"); }

RunResult run_ensemble(const Scenario& s) {
  s.validate();
  RunResult r;
  r.table.columns = {"axis_value", "fidelity_transfer", "fidelity_entangle", "rabi_period",
                     "rabi_period_expected", "runtime_s"};
  const auto& num = s.numerics;
  warn_truncation(r, s.params.n_init, num.n_max, "ensemble");
  for (int n : s.n_values) {
    if (n > kMaxDenseEnsemble) {
      throw CapacityError("ensemble: N = " + std::to_string(n) + " exceeds the dense limit of " +
                          std::to_string(kMaxDenseEnsemble));
    }
    const auto start = std::chrono::steady_clock::now();
    ModelParams p = s.params;
    p.N = n;
    const HilbertSpace qubits = qubit_register(n);
    const DensityMatrix rho0 = tensor(DensityMatrix::from_pure(w_state(qubits)), thermal_state(p.n_init, num.n_max));
    const HilbertSpace& space = rho0.space();
    const double g_alpha = p.g * alpha_abs(p);
    const double phase = alpha_arg(p);
    const double omega = g_alpha * std::sqrt(static_cast<double>(n));
    const auto [dt, quarter_steps] = snap_dt((kPi / 4.0) / omega, num.dt / g_alpha);

    EvolutionSpec spec;
    spec.hamiltonian = build_H_ensemble(p, space);
    spec.terms = bath_terms_ensemble(p, space);
    spec.dt = dt;
    spec.t_final = 2.0 * static_cast<double>(quarter_steps) * dt;
    spec.probes.emplace_back("fidelity", [space, g_alpha, phase](double t, const DensityMatrix& rho) {
      return fidelity_pure(oracle_ensemble_state(t, g_alpha, space, phase), rho);
    });
    const std::string ctx = "ensemble N=" + std::to_string(n);
    const Trajectory traj = with_context(ctx, [&] { return evolve_master(rho0, spec); });
    absorb_diagnostics(r, traj);
    const auto& fid = traj.probes.at("fidelity");
    const double f_transfer = fid[traj.index_near((kPi / 2.0) / omega)];
    const double f_entangle = fid[traj.index_near((kPi / 4.0) / omega)];

    // Period from a lossless pure run of |W, 0>, independent of the bath settings.
    const StateVector psi0 = symmetric_excitation_state(space);
    PureEvolutionSpec pure;
    pure.hamiltonian = build_H_ensemble(p, space);
    pure.dt = dt;
    pure.t_final = 8.0 * static_cast<double>(quarter_steps) * dt;
    pure.probes.emplace_back("overlap", [psi0](double, const StateVector& psi) {
      return inner(psi0.amplitudes(), psi.amplitudes()).real();
    });
    const Trajectory rabi = with_context(ctx, [&] { return evolve_pure(psi0, pure); });
    const double period = period_from_crossings(rabi.times, rabi.probes.at("overlap"));

    const double runtime = s.report_runtime ? seconds_since(start) : 0.0;
    r.table.rows.push_back({static_cast<double>(n), f_transfer, f_entangle, period * g_alpha,
                            2.0 * kPi / std::sqrt(static_cast<double>(n)), runtime});
  }
  r.summary = {
      {"max_trace_dev", r.max_trace_deviation},
      {"min_eig_bound", r.min_eig_bound},
  };
  return r;
}

RunResult run_squeeze(const Scenario& s) {
  s.validate();
  RunResult r;
  const auto& p = s.params;
  const auto& num = s.numerics;
  const HilbertSpace space({SubsystemSpec::boson(num.n_max, "b"), SubsystemSpec::boson(num.n_max, "c")});
  const DensityMatrix thermal = thermal_state(p.n_init, num.n_max);
  const DensityMatrix rho0(space, kron(thermal.matrix(), thermal.matrix()));

  const double eta = squeeze_rate(p);
  const double xi_per_t = std::abs(eta);
  const auto ops = collective_mode_ops(space, p.delta_phase);
  EvolutionSpec spec;
  spec.hamiltonian = build_H_squeeze_eff(p, space);
  spec.terms = bath_terms_squeeze(p, space, s.heating_as_decay);
  spec.t_final = num.t_final / xi_per_t;
  spec.dt = num.dt / xi_per_t;
  spec.record_every = num.record_every;
  spec.observables.push_back({"d1", ops.d1});
  spec.observables.push_back({"d1_sq", matmul(ops.d1, ops.d1)});
  spec.probes.emplace_back("p_tail", [](double, const DensityMatrix& rho) { return tail_population(rho); });

  const Trajectory traj = with_context("squeeze", [&] { return evolve_master(rho0, spec); });
  absorb_diagnostics(r, traj);

  r.table.columns = {"xi", "d1_sq", "d1_var", "p_tail", "trace_dev"};
  const auto& d1 = traj.observables.at("d1");
  const auto& d1_sq = traj.observables.at("d1_sq");
  const auto& tail = traj.probes.at("p_tail");
  std::size_t arg_min = 0;
  std::size_t arg_tail = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double mean = d1[k].real();
    const double sq = d1_sq[k].real();
    r.table.rows.push_back({traj.times[k] * xi_per_t, sq, sq - mean * mean, tail[k], traj.trace_deviation[k]});
    if (sq < d1_sq[arg_min].real()) arg_min = k;
    if (tail[k] > tail[arg_tail]) arg_tail = k;
  }
  const double tol = default_tolerances().tail_population;
  if (tail[arg_tail] > tol) {
    throw TruncationGuardError("squeeze: top Fock level holds population " + std::to_string(tail[arg_tail]) +
                               " (limit " + std::to_string(tol) + ") at xi = " +
                               std::to_string(traj.times[arg_tail] * xi_per_t) + "; raise n_max above " +
                               std::to_string(num.n_max) + " or shorten t_final");
  }
  r.summary = {
      {"min_d1_sq", d1_sq[arg_min].real()},
      {"xi_min", traj.times[arg_min] * xi_per_t},
      {"max_p_tail", tail[arg_tail]},
      {"max_trace_dev", r.max_trace_deviation},
      {"min_eig_bound", r.min_eig_bound},
  };
  return r;
}

RunResult run_scenario(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::entangle: return run_entangle(s);
    case ScenarioKind::transfer: return run_transfer(s);
    case ScenarioKind::ensemble: return run_ensemble(s);
    case ScenarioKind::squeeze: return run_squeeze(s);
    case ScenarioKind::sweep: return run_sweep(s);
  }
  throw ConfigError("unknown scenario");
}

}  // namespace nvmo
