#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "tcore/error.hpp"

namespace tcore::cli {

/// Environment variable naming the key=value config file.
inline constexpr const char* config_env_var = "TCORE_CONFIG";

/// Flat key=value settings. Blank lines and lines starting with '#' are
/// skipped; whitespace around keys and values is trimmed.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in) {
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw error(errc::parse_error, "config line " + std::to_string(lineno) + ": expected key=value");
      }
      const auto key = trim(body.substr(0, eq));
      if (key.empty()) throw error(errc::parse_error, "config line " + std::to_string(lineno) + ": empty key");
      cfg.values_[key] = trim(body.substr(eq + 1));
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_argument, "cannot read config file '" + path + "'");
    return parse(in);
  }

  /// Reads the file named by TCORE_CONFIG, or returns an empty config.
  static Config from_environment() {
    const char* path = std::getenv(config_env_var);
    if (path == nullptr || *path == '\0') return {};
    return load(path);
  }

  std::optional<std::string> get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_string(const std::string& key, std::string fallback) const {
    return get(key).value_or(std::move(fallback));
  }

  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const auto parsed = std::stoull(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing characters");
      return parsed;
    } catch (const std::exception&) {
      throw error(errc::parse_error, "config key '" + key + "' expects a non-negative integer, got '" + *v + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on") return true;
    if (*v == "0" || *v == "false" || *v == "no" || *v == "off") return false;
    throw error(errc::parse_error, "config key '" + key + "' expects a boolean, got '" + *v + "'");
  }

 private:
  static std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  }

  std::map<std::string, std::string> values_;
};

}  // namespace tcore::cli
