#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvmo/errors.hpp"
#include "nvmo/runner.hpp"

#ifndef NVMO_VERSION_STRING
#define NVMO_VERSION_STRING "unknown"
#endif

namespace nvmo {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string version_string() { return NVMO_VERSION_STRING; }

std::string format_csv(const Scenario& s, const RunResult& r) {
  std::ostringstream os;
  os << "# nvmo-sim " << version_string() << "\n";
  os << "# scenario = " << to_string(s.kind) << "\n";
  for (const auto& [k, v] : s.source.entries()) {
    if (k == "out") continue;
    os << "# config." << k << " = " << v << "\n";
  }
  const auto& p = s.params;
  os << "# units.unit = " << s.units.unit_name << "\n";
  os << "# units.unit_rad_per_s = " << num(s.units.unit_rad_per_s) << "\n";
  os << "# units.g_rad_per_s = " << num(s.units.g_rad_per_s) << "\n";
  os << "# units.alpha_abs = " << num(s.units.alpha_abs) << "\n";
  os << "# units.note = rates below are SI angular rates divided by unit_rad_per_s; time columns are in units of 1/unit\n";
  os << "# model.g = " << num(p.g) << "\n";
  if (p.alpha) {
    os << "# model.alpha_re = " << num(p.alpha->real()) << "\n";
    os << "# model.alpha_im = " << num(p.alpha->imag()) << "\n";
  }
  os << "# model.omega = " << num(p.omega) << "\n";
  os << "# model.gamma2 = " << num(p.gamma2) << "\n";
  os << "# model.gamma3 = " << num(p.gamma3) << "\n";
  os << "# model.dephasing_rate = " << num(p.dephasing_rate) << "\n";
  os << "# model.n_bath = " << num(p.n_bath) << "\n";
  os << "# model.n_init = " << num(p.n_init) << "\n";
  os << "# model.delta_phase = " << num(p.delta_phase) << "\n";
  os << "# model.spin_sign = " << num(p.spin_sign) << "\n";
  if (s.kind == ScenarioKind::ensemble) {
    os << "# model.N_values =";
    for (int n : s.n_values) os << " " << n;
    os << "\n";
  }
  os << "# numerics.n_max = " << s.numerics.n_max << "\n";
  os << "# numerics.dt = " << num(s.numerics.dt) << "\n";
  os << "# numerics.t_final = " << num(s.numerics.t_final) << "\n";
  os << "# numerics.record_every = " << s.numerics.record_every << "\n";
  os << "# numerics.heating_as_decay = " << (s.heating_as_decay ? "true" : "false") << "\n";
  if (s.kind == ScenarioKind::sweep) {
    os << "# sweep.scenario = " << to_string(s.sweep_target) << "\n";
    os << "# sweep.axis = " << s.sweep_axis << "\n";
  }

  for (std::size_t c = 0; c < r.table.columns.size(); ++c) os << (c ? "," : "") << r.table.columns[c];
  os << "\n";
  for (const auto& row : r.table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << num(row[c]);
    os << "\n";
  }
  for (const auto& [k, v] : r.summary) {
    os << (k == "slope_k" ? "# fit." : "# summary.") << k << " = " << num(v) << "\n";
  }
  for (const auto& w : r.warnings) os << "# warning: " << w << "\n";
  return os.str();
}

void write_csv(const Scenario& s, const RunResult& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << format_csv(s, r);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace nvmo
