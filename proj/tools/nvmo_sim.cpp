// nvmo-sim: run one named scenario and write a CSV table.
//
//   nvmo-sim <scenario> --config <file> [--key value]... --out <path>
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 truncation guard.

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nvmo/errors.hpp"
#include "nvmo/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTruncation = 4;

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
      throw nvmo::ConfigError("unexpected argument '" + arg + "'");
    }
    const std::string body = arg.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extras.size()) throw nvmo::ConfigError("flag '" + arg + "' needs a value");
    out.emplace_back(body, extras[++i]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate NV-center / mechanical-oscillator scenarios"};
  app.allow_extras();
  std::string scenario;
  std::string config_path;
  std::string out_path;
  app.add_option("scenario", scenario, "entangle | transfer | ensemble | squeeze | sweep")->required();
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--out", out_path, "output CSV path")->required();
  app.set_version_flag("--version", nvmo::version_string());
  app.footer("Any other --key value pair overrides the config file.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    nvmo::Config cfg = config_path.empty() ? nvmo::Config{} : nvmo::Config::load(config_path);
    cfg.merge(parse_overrides(app.remaining()));
    const auto kind = nvmo::parse_scenario_kind(scenario);
    nvmo::Scenario s = nvmo::scenario_from_config(kind, cfg);
    s.output.path = out_path;

    const nvmo::RunResult r = nvmo::run_scenario(s);
    nvmo::write_csv(s, r, out_path);
    for (const auto& [k, v] : r.summary) std::printf("%s = %.12g\n", k.c_str(), v);
    for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return 0;
  } catch (const nvmo::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nvmo::ParameterError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nvmo::CapacityError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const nvmo::TruncationGuardError& e) {
    std::fprintf(stderr, "truncation guard: %s\n", e.what());
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
}
