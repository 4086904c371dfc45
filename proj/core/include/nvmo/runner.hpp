#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nvmo/config.hpp"
#include "nvmo/models.hpp"

namespace nvmo {

enum class ScenarioKind { entangle, transfer, ensemble, squeeze, sweep };

ScenarioKind parse_scenario_kind(const std::string& name);
std::string to_string(ScenarioKind kind);

struct Numerics {
  int n_max = 8;
  double dt = 1e-3;
  double t_final = 0.0;
  std::size_t record_every = 1;
};

struct OutputSpec {
  std::string path;
  std::string format = "csv";
};

/// How SI inputs were reduced to dimensionless ones.
struct UnitConversion {
  double unit_rad_per_s = 1.0;  // every rate in `params` is SI rate / unit
  std::string unit_name;        // "g|alpha|" or "eta"
  double g_rad_per_s = 0.0;
  double alpha_abs = 0.0;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::entangle;
  ModelParams params;  // dimensionless
  Numerics numerics;
  OutputSpec output;
  UnitConversion units;
  std::vector<int> n_values;     // ensemble only
  bool heating_as_decay = false;
  bool report_runtime = true;
  ScenarioKind sweep_target = ScenarioKind::squeeze;  // sweep only
  std::string sweep_axis;
  std::vector<double> sweep_values;
  Config source;  // resolved configuration, echoed into the output header

  /// Throws ConfigError on non-positive numerics or an unusable combination.
  void validate() const;
};

/// Every key the runner accepts.
const std::vector<std::string>& known_config_keys();

/// Builds a validated scenario. Physical inputs are quoted as f/2pi in Hz and
/// as ratios to g; they are converted to units of g|alpha| (entangle,
/// transfer, ensemble) or eta (squeeze).
Scenario scenario_from_config(ScenarioKind kind, const Config& cfg);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  Table table;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> warnings;
  // Structure diagnostics over the whole run.
  double max_trace_deviation = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eig_bound = 0.0;

  double summary_value(const std::string& key) const;
};

/// Columns t, negativity, fidelity, trace_dev, n_phonon with t in units of 1/(g|alpha|).
/// Summary: max_negativity, tau_max_negativity, fidelity_transfer (tau = pi/2),
/// fidelity_entangle (tau = pi/4).
RunResult run_entangle(const Scenario& s);
RunResult run_transfer(const Scenario& s);

/// One row per N: axis_value, fidelity_transfer, fidelity_entangle,
/// rabi_period, rabi_period_expected, runtime_s.
RunResult run_ensemble(const Scenario& s);

/// Columns xi, d1_sq, d1_var, p_tail, trace_dev. Summary: min_d1_sq, xi_min,
/// max_p_tail. Throws TruncationGuardError when the tail population exceeds
/// the tolerance.
RunResult run_squeeze(const Scenario& s);

/// One scenario per value of s.sweep_axis, on a worker pool capped by
/// SIM_THREADS. Rows follow input order. For a squeeze sweep over n_init the
/// summary carries slope_k, the least-squares slope of min_d1_sq.
RunResult run_sweep(const Scenario& s);
/// Same with an explicit worker count.
RunResult run_sweep(const Scenario& s, unsigned workers);

RunResult run_scenario(const Scenario& s);

/// Worker count from SIM_THREADS, else hardware concurrency (at least 1).
unsigned sweep_workers_from_env();

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Writes the self-describing header, the column line and `%.12g` rows.
std::string format_csv(const Scenario& s, const RunResult& r);
void write_csv(const Scenario& s, const RunResult& r, const std::string& path);

/// Library version baked in at build time.
std::string version_string();

}  // namespace nvmo
