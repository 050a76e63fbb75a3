#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcore/bigint.hpp"
#include "tcore/series.hpp"

namespace tcore::cli {

/// On-disk store of Euler-part expansions keyed by the canonical eta
/// quotient string. Text format, one entry per line after a version header:
///
///   tcore-coefficient-cache 1
///   <canonical>\t<order>\t<c0> <c1> ... <c_order>
///
/// The cache is advisory. An unreadable or foreign file is treated as empty
/// and a lookup for a smaller order than stored truncates the stored entry.
class CoefficientCache {
 public:
  static constexpr const char* header = "tcore-coefficient-cache 1";

  explicit CoefficientCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

  const std::filesystem::path& path() const noexcept { return path_; }

  std::optional<TruncatedSeries> lookup(const std::string& key, std::size_t order) const {
    const auto it = entries_.find(key);
    if (it == entries_.end() || it->second.order() < order) return std::nullopt;
    return it->second.truncate(order);
  }

  void store(const std::string& key, const TruncatedSeries& s) {
    const auto it = entries_.find(key);
    if (it != entries_.end() && it->second.order() >= s.order()) return;
    entries_.insert_or_assign(key, s);
    dirty_ = true;
  }

  /// (key, order) for each entry, sorted by key.
  std::vector<std::pair<std::string, std::size_t>> entries() const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& [key, s] : entries_) out.emplace_back(key, s.order());
    return out;
  }

  /// Writes pending entries via a temporary file and rename.
  void save() {
    if (!dirty_) return;
    const auto tmp = std::filesystem::path(path_.string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;
      out << header << '\n';
      for (const auto& [key, s] : entries_) {
        out << key << '\t' << s.order() << '\t';
        for (std::size_t i = 0; i <= s.order(); ++i) {
          if (i > 0) out << ' ';
          out << s[i];
        }
        out << '\n';
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
    if (!ec) dirty_ = false;
  }

  /// Removes the cache file; returns whether one existed.
  bool clear() {
    entries_.clear();
    dirty_ = false;
    std::error_code ec;
    return std::filesystem::remove(path_, ec);
  }

 private:
  void load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) return;
    std::string line;
    if (!std::getline(in, line) || line != header) return;
    std::map<std::string, TruncatedSeries> parsed;
    while (std::getline(in, line)) {
      const auto tab1 = line.find('\t');
      const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
      if (tab2 == std::string::npos) return;
      const std::string key = line.substr(0, tab1);
      std::size_t order = 0;
      std::vector<BigInt> coeffs;
      try {
        order = std::stoull(line.substr(tab1 + 1, tab2 - tab1 - 1));
        std::istringstream body(line.substr(tab2 + 1));
        std::string tok;
        while (body >> tok) coeffs.emplace_back(tok, 10);
      } catch (const std::exception&) {
        return;
      }
      if (coeffs.size() != order + 1) return;
      parsed.insert_or_assign(key, TruncatedSeries(std::move(coeffs)));
    }
    entries_ = std::move(parsed);
  }

  std::filesystem::path path_;
  std::map<std::string, TruncatedSeries> entries_;
  bool dirty_ = false;
};

}  // namespace tcore::cli
