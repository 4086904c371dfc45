#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nvmo {

/// Flat `key = value` configuration. Later sources override earlier ones.
class Config {
 public:
  Config() = default;

  /// Parses `key = value` lines; `#` starts a comment. Throws ConfigError
  /// with the file name and line number on malformed input.
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  void set(const std::string& key, std::string value);
  /// Applies overrides in order; the last occurrence of a key wins.
  void merge(const std::vector<std::pair<std::string, std::string>>& overrides);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma- or whitespace-separated list of numbers.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Parses a number with optional `pi` factors: "1e-3", "pi", "pi/2", "3*pi/4", "-pi/2".
double parse_number(const std::string& text);

}  // namespace nvmo
