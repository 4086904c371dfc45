#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

#include "nvmo/errors.hpp"
#include "nvmo/runner.hpp"

namespace nvmo {

unsigned sweep_workers_from_env() {
  if (const char* env = std::getenv("SIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    throw ConfigError(std::string("SIM_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("fit_slope: need two or more (x, y) pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ParameterError("fit_slope: x values are all equal");
  return sxy / sxx;
}

RunResult run_sweep(const Scenario& s) { return run_sweep(s, sweep_workers_from_env()); }

RunResult run_sweep(const Scenario& s, unsigned workers) {
  s.validate();
  const std::size_t n = s.sweep_values.size();
  std::vector<Scenario> points;
  points.reserve(n);
  for (double v : s.sweep_values) {
    Config c = s.source;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    c.set(s.sweep_axis, buf);
    points.push_back(scenario_from_config(s.sweep_target, c));
  }

  std::vector<RunResult> results(n);
  std::vector<double> runtimes(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = run_scenario(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      runtimes[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunResult out;
  out.table.columns.push_back("axis_value");
  for (const auto& [k, v] : results.front().summary) out.table.columns.push_back(k);
  out.table.columns.push_back("runtime_s");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{s.sweep_values[i]};
    for (const auto& [k, v] : results[i].summary) row.push_back(v);
    row.push_back(s.report_runtime ? runtimes[i] : 0.0);
    out.table.rows.push_back(std::move(row));
    out.max_trace_deviation = std::max(out.max_trace_deviation, results[i].max_trace_deviation);
    out.max_hermiticity_error = std::max(out.max_hermiticity_error, results[i].max_hermiticity_error);
    out.min_eig_bound = std::min(out.min_eig_bound, results[i].min_eig_bound);
    for (const auto& w : results[i].warnings) out.warnings.push_back(s.sweep_axis + "=" + std::to_string(s.sweep_values[i]) + ": " + w);
  }
  if (s.sweep_target == ScenarioKind::squeeze && s.sweep_axis == "n_init" && n >= 2) {
    std::vector<double> mins;
    for (const auto& r : results) mins.push_back(r.summary_value("min_d1_sq"));
    out.summary.emplace_back("slope_k", fit_slope(s.sweep_values, mins));
  }
  return out;
}

}  // namespace nvmo
