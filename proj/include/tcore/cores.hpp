#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tcore/bigint.hpp"
#include "tcore/error.hpp"
#include "tcore/series.hpp"

namespace tcore {

/// Integer partition with weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0 || (i > 0 && parts_[i] > parts_[i - 1])) {
        throw error(errc::invalid_argument, "partition parts must be positive and weakly decreasing");
      }
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
  }

  const std::vector<std::uint32_t>& parts() const noexcept { return parts_; }
  std::uint64_t weight() const noexcept { return weight_; }
  bool empty() const noexcept { return parts_.empty(); }

  Partition conjugate() const {
    std::vector<std::uint32_t> out(parts_.empty() ? 0 : parts_.front(), 0);
    for (auto p : parts_) {
      for (std::uint32_t j = 0; j < p; ++j) ++out[j];
    }
    return Partition(std::move(out));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> parts_;
  std::uint64_t weight_ = 0;
};

/// Hook lengths of every cell, sorted ascending. Cell (i, j) (0-based) has
/// hook parts[i] - j + conj[j] - i - 1.
inline std::vector<std::uint32_t> hook_numbers(const Partition& p) {
  const auto conj = p.conjugate();
  const auto& rows = p.parts();
  const auto& cols = conj.parts();
  std::vector<std::uint32_t> hooks;
  hooks.reserve(p.weight());
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    for (std::uint32_t j = 0; j < rows[i]; ++j) hooks.push_back(rows[i] - j + cols[j] - i - 1);
  }
  std::sort(hooks.begin(), hooks.end());
  return hooks;
}

inline bool is_t_core(const Partition& p, std::uint32_t t) {
  if (t < 2) throw error(errc::invalid_argument, "t must be at least 2");
  const auto hooks = hook_numbers(p);
  return std::none_of(hooks.begin(), hooks.end(), [t](std::uint32_t h) { return h % t == 0; });
}

/// Calls `visit` once for every partition of n, largest part first.
inline void for_each_partition(std::uint32_t n, const std::function<void(const Partition&)>& visit) {
  std::vector<std::uint32_t> parts;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t remaining, std::uint32_t max_part) {
    if (remaining == 0) {
      visit(Partition(parts));
      return;
    }
    for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      rec(remaining - part, part);
      parts.pop_back();
    }
  };
  rec(n, n);
}

struct OracleConfig {
  std::uint32_t max_n = 40;
};

inline void check_budget(std::uint64_t n, const OracleConfig& cfg) {
  if (n > cfg.max_n) {
    throw error(errc::budget_exceeded,
                "enumeration of partitions of " + std::to_string(n) + " exceeds cap " + std::to_string(cfg.max_n));
  }
}

/// A_t(n) by exhaustive enumeration.
inline std::uint64_t count_t_cores(std::uint32_t n, std::uint32_t t, const OracleConfig& cfg = {}) {
  if (t < 2) throw error(errc::invalid_argument, "t must be at least 2");
  check_budget(n, cfg);
  std::uint64_t count = 0;
  for_each_partition(n, [&](const Partition& p) {
    if (is_t_core(p, t)) ++count;
  });
  return count;
}

/// A_{t,k}(0..n): enumeration counts of single t-cores, raised to the k-th
/// power as a series so k-tuples never need to be listed.
inline TruncatedSeries count_tuples_series(std::uint32_t n, std::uint32_t t, std::uint32_t k,
                                           const OracleConfig& cfg = {}) {
  if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  check_budget(n, cfg);
  SeriesBuilder single(n);
  for (std::uint32_t m = 0; m <= n; ++m) single[m] = count_t_cores(m, t, cfg);
  return pow(std::move(single).finish(), k);
}

inline BigInt count_tuples(std::uint32_t n, std::uint32_t t, std::uint32_t k, const OracleConfig& cfg = {}) {
  return count_tuples_series(n, t, k, cfg)[n];
}

}  // namespace tcore
