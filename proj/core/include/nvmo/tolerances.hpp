#pragma once

namespace nvmo {

// All numeric thresholds used for contract checks live here so that tests and
// the runner agree on a single set of values.
struct Tolerances {
  // max|M - M^dagger| <= hermitian_rel * max|M| for matrices treated as Hermitian
  double hermitian_rel = 1e-12;
  // Jacobi stops once the off-diagonal Frobenius norm drops below this fraction
  // of the full Frobenius norm
  double jacobi_offdiag_rel = 1e-15;
  int jacobi_max_sweeps = 100;

  double state_norm = 1e-9;
  double density_hermitian = 1e-10;
  double density_trace = 1e-8;
  double density_min_eig = -1e-7;

  // evolve_master / evolve_pure diagnostics
  double trace_warn = 1e-6;
  double trace_fail = 1e-4;
  double min_eig_warn = -1e-5;
  double min_eig_fail = -1e-3;
  double norm_drift_warn = 1e-8;
  double norm_drift_fail = 1e-4;

  // Squeezing runs reject trajectories whose top Fock level carries more
  // than this population.
  double tail_population = 1e-4;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace nvmo
