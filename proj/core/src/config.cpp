#include "nvmo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nvmo/errors.hpp"

namespace nvmo {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

double parse_factor(const std::string& token, const std::string& whole) {
  if (token == "pi") return std::numbers::pi;
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ConfigError("cannot parse number '" + whole + "'");
  }
  return v;
}

}  // namespace

double parse_number(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty numeric value");
  double sign = 1.0;
  if (s.front() == '-' && s.find("pi") != std::string::npos) {
    sign = -1.0;
    s.erase(0, 1);
  }
  // Left to right over '*' and '/'; no parentheses.
  double value = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find_first_of("*/", pos);
    const std::string token = trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    const double f = parse_factor(token, text);
    value = op == '*' ? value * f : value / f;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  value *= sign;
  if (!std::isfinite(value)) throw ConfigError("non-finite numeric value '" + text + "'");
  return value;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (!valid_key(key)) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": invalid key '" + key + "'");
    }
    cfg.values_[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::set(const std::string& key, std::string value) {
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'");
  values_[key] = trim(value);
}

void Config::merge(const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) set(k, v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get_optional_double(key);
  return v ? *v : fallback;
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  try {
    return parse_number(it->second);
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto v = get_optional_double(key);
  if (!v) return fallback;
  if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + get_string(key, "") + "'");
  }
  return static_cast<int>(*v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + it->second + "'");
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string s = it->second;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      out.push_back(parse_number(token));
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : values_) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
}

}  // namespace nvmo
