#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcore/arith.hpp"
#include "tcore/cores.hpp"
#include "tcore/error.hpp"
#include "tcore/eta.hpp"
#include "tcore/series.hpp"

namespace tcore {

enum class EisensteinKind {
  sigma,              // sum_{d|m} d^j
  twisted_divisor,    // sum_{d|m} chi(d) d^j
  twisted_codivisor,  // sum_{d|m} chi(m/d) d^j
  sharp,              // p^{j nu_p(m)} sum_{d|m, p∤d} d^j
};

/// Coefficient function of an Eisenstein series, evaluated pointwise.
/// `param` is the character modulus for the twisted kinds and the prime
/// for `sharp`; it is unused for plain sigma.
struct EisensteinTerm {
  EisensteinKind kind = EisensteinKind::sigma;
  unsigned j = 0;
  unsigned param = 0;

  BigInt operator()(std::uint64_t m) const {
    switch (kind) {
      case EisensteinKind::sigma: return tcore::sigma(j, m);
      case EisensteinKind::twisted_divisor: return sigma_twisted_d(character_for_modulus(param), j, m);
      case EisensteinKind::twisted_codivisor: return sigma_twisted_q(character_for_modulus(param), j, m);
      case EisensteinKind::sharp: return sigma_sharp(param, j, m);
    }
    return 0;
  }

  friend bool operator==(const EisensteinTerm&, const EisensteinTerm&) = default;
};

/// n -> scale * n + offset
struct IndexMap {
  std::uint64_t scale = 1;
  std::uint64_t offset = 0;

  std::uint64_t operator()(std::uint64_t n) const noexcept { return scale * n + offset; }
  friend bool operator==(const IndexMap&, const IndexMap&) = default;
};

/// One closed formula A_{t,k}(n) = (E(m) - a(m)) / divisor with m = index(n)
/// and a(m) the coefficients of the cusp form (zero when there is none).
struct FormulaSpec {
  std::string id;
  std::uint32_t t = 0;
  std::uint32_t k = 0;
  IndexMap index;
  EisensteinTerm eisenstein;
  std::optional<std::string> cusp;
  std::uint64_t divisor = 1;
  std::uint32_t level = 1;
  std::uint32_t weight = 1;
  std::string nebentypus;

  friend bool operator==(const FormulaSpec&, const FormulaSpec&) = default;
};

inline std::string theorem_id(std::uint32_t t, std::uint32_t k) {
  return std::to_string(t) + "," + std::to_string(k);
}

inline const std::vector<FormulaSpec>& default_registry() {
  using K = EisensteinKind;
  static const std::vector<FormulaSpec> registry = {
      {"3,1", 3, 1, {3, 1}, {K::twisted_divisor, 0, 3}, std::nullopt, 1, 9, 1, "(-3|n)"},
      {"3,2", 3, 2, {3, 2}, {K::sigma, 1, 0}, std::nullopt, 3, 9, 2, "(9|n)"},
      {"3,3", 3, 3, {1, 1}, {K::twisted_codivisor, 2, 3}, std::nullopt, 1, 3, 3, "(-3|n)"},
      {"3,4", 3, 4, {3, 4}, {K::sigma, 3, 0}, "eta8_3", 81, 9, 4, "(9|n)"},
      {"3,6", 3, 6, {1, 2}, {K::sharp, 5, 3}, "eta6_1_6_3", 39, 3, 6, "(9|n)"},
      {"4,2", 4, 2, {4, 5}, {K::twisted_divisor, 2, 4}, "eta6_4", 32, 16, 3, "(-4|n)"},
      {"5,1", 5, 1, {1, 1}, {K::twisted_codivisor, 1, 5}, std::nullopt, 1, 5, 2, "(5|n)"},
      {"5,2", 5, 2, {1, 2}, {K::sharp, 3, 5}, "eta4_1_4_5", 13, 5, 4, "trivial"},
      {"7,1", 7, 1, {1, 2}, {K::twisted_codivisor, 2, 7}, "eta3_1_3_7", 8, 7, 3, "(-7|n)"},
  };
  return registry;
}

inline const FormulaSpec* find_formula(std::span<const FormulaSpec> registry, std::string_view id) {
  for (const auto& f : registry) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

inline const FormulaSpec* find_formula(std::span<const FormulaSpec> registry, std::uint32_t t, std::uint32_t k) {
  for (const auto& f : registry) {
    if (f.t == t && f.k == k) return &f;
  }
  return nullptr;
}

/// Cusp-form coefficients a(0..m_max), or nullopt for formulas without one.
inline std::optional<TruncatedSeries> cusp_expansion(const FormulaSpec& spec, std::uint64_t m_max) {
  if (!spec.cusp) return std::nullopt;
  return expand(find_named_form(*spec.cusp).quotient, m_max);
}

/// E(m) - a(m) for m = index(n); `cusp` must reach m when the formula has
/// a cusp term.
inline BigInt formula_numerator(const FormulaSpec& spec, std::uint64_t n, const TruncatedSeries* cusp) {
  const std::uint64_t m = spec.index(n);
  BigInt value = spec.eisenstein(m);
  if (spec.cusp) {
    if (cusp == nullptr || cusp->order() < m) {
      throw error(errc::invalid_argument, "cusp expansion for " + spec.id + " does not reach q^" + std::to_string(m));
    }
    value -= (*cusp)[m];
  }
  return value;
}

inline BigInt closed_form(const FormulaSpec& spec, std::uint64_t n, const TruncatedSeries* cusp) {
  const BigInt num = formula_numerator(spec, n, cusp);
  const BigInt c = static_cast<unsigned long>(spec.divisor);
  if (num % c != 0) {
    throw error(errc::non_integral_result,
                spec.id + " at n=" + std::to_string(n) + ": " + to_string(num) + " is not divisible by " +
                    std::to_string(spec.divisor));
  }
  return num / c;
}

/// Single evaluation; expands the cusp form on demand.
inline BigInt closed_form(const FormulaSpec& spec, std::uint64_t n) {
  const auto cusp = cusp_expansion(spec, spec.index(n));
  return closed_form(spec, n, cusp ? &*cusp : nullptr);
}

/// ceil(weight * [SL2(Z) : Gamma0(N)] / 12), the index being
/// N * prod_{p | N} (1 + 1/p).
inline std::uint64_t gamma0_index(std::uint64_t level) {
  if (level == 0) throw error(errc::invalid_argument, "level must be positive");
  std::uint64_t index = 1;
  std::uint64_t rest = level;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    std::uint64_t pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    index *= pe / p * (p + 1);
  }
  if (rest > 1) index *= rest + 1;
  return index;
}

inline std::uint64_t sturm_bound(std::uint64_t level, std::uint64_t weight) {
  if (weight == 0) throw error(errc::invalid_argument, "weight must be positive");
  return (weight * gamma0_index(level) + 11) / 12;
}

struct Mismatch {
  std::uint64_t n = 0;
  std::optional<BigInt> formula;  // nullopt when the division was not exact
  BigInt series;
  std::optional<BigInt> oracle;
  std::string reason;
};

struct VerificationReport {
  std::string theorem;
  std::uint64_t terms_checked = 0;
  std::uint64_t oracle_checked = 0;
  std::uint64_t sturm_bound = 0;
  std::optional<Mismatch> first_mismatch;
  std::chrono::nanoseconds elapsed{0};

  bool ok() const noexcept { return !first_mismatch.has_value(); }
};

/// Compares the closed formula against the series coefficient for
/// n < terms and against the enumeration oracle for n <= oracle_cap.
/// Disagreements are reported, never thrown. The oracle cap is clamped to
/// `oracle_cfg.max_n`.
inline VerificationReport verify(const FormulaSpec& spec, std::uint64_t terms, std::uint64_t oracle_cap,
                                 const OracleConfig& oracle_cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (terms == 0) throw error(errc::invalid_argument, "verify needs at least one term");
  VerificationReport report;
  report.theorem = spec.id;
  report.sturm_bound = sturm_bound(spec.level, spec.weight);

  const std::uint64_t last = terms - 1;
  const auto series = phi_power(spec.t, spec.k, last);
  const auto cusp = cusp_expansion(spec, spec.index(last));
  const std::uint64_t oracle_last = std::min<std::uint64_t>({oracle_cap, last, oracle_cfg.max_n});
  const auto oracle = count_tuples_series(static_cast<std::uint32_t>(oracle_last), spec.t, spec.k, oracle_cfg);

  for (std::uint64_t n = 0; n <= last; ++n) {
    ++report.terms_checked;
    const bool with_oracle = n <= oracle_last;
    if (with_oracle) ++report.oracle_checked;

    Mismatch m;
    m.n = n;
    m.series = series[n];
    if (with_oracle) m.oracle = oracle[n];
    try {
      m.formula = closed_form(spec, n, cusp ? &*cusp : nullptr);
    } catch (const error& e) {
      if (e.code() != errc::non_integral_result) throw;
      m.reason = "non-integral closed form";
    }
    if (m.reason.empty() && *m.formula != m.series) m.reason = "formula differs from series";
    if (m.reason.empty() && with_oracle && *m.oracle != m.series) m.reason = "oracle differs from series";
    if (!m.reason.empty()) {
      report.first_mismatch = std::move(m);
      break;
    }
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

/// Runs `verify` for every entry, up to `jobs` at a time; reports come back
/// in registry order.
inline std::vector<VerificationReport> verify_all(std::span<const FormulaSpec> registry, std::uint64_t terms,
                                                  std::uint64_t oracle_cap, unsigned jobs = 1,
                                                  const OracleConfig& oracle_cfg = {}) {
  std::vector<VerificationReport> out;
  out.reserve(registry.size());
  jobs = std::max(jobs, 1U);
  for (std::size_t begin = 0; begin < registry.size(); begin += jobs) {
    const std::size_t end = std::min(registry.size(), begin + jobs);
    std::vector<std::future<VerificationReport>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&, i] { return verify(registry[i], terms, oracle_cap, oracle_cfg); }));
    }
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

/// First n < terms at which divisor does not divide E(m) - a(m).
inline std::optional<std::uint64_t> first_divisibility_failure(const FormulaSpec& spec, std::uint64_t terms) {
  if (terms == 0) return std::nullopt;
  const auto cusp = cusp_expansion(spec, spec.index(terms - 1));
  const BigInt c = static_cast<unsigned long>(spec.divisor);
  for (std::uint64_t n = 0; n < terms; ++n) {
    if (formula_numerator(spec, n, cusp ? &*cusp : nullptr) % c != 0) return n;
  }
  return std::nullopt;
}

/// sum_{n>=0} [ q^{5n+1}/(1-q^{5n+1})^2 - q^{5n+2}/(1-q^{5n+2})^2
///              - q^{5n+3}/(1-q^{5n+3})^2 + q^{5n+4}/(1-q^{5n+4})^2 ]
/// through q^order, using q^a/(1-q^a)^2 = sum_{d>=1} d q^{ad}. The sign of
/// the q^a block is chi5_3(a). Equals q * phi(5).
inline TruncatedSeries lambert_a51(std::size_t order) {
  SeriesBuilder out(order);
  const auto& chi = chi5_3();
  for (std::size_t a = 1; a <= order; ++a) {
    const int sign = chi(a);
    if (sign == 0) continue;
    for (std::size_t d = 1; a * d <= order; ++d) {
      if (sign > 0) {
        out[a * d] += static_cast<unsigned long>(d);
      } else {
        out[a * d] -= static_cast<unsigned long>(d);
      }
    }
  }
  return std::move(out).finish();
}

/// Fraction nonzero / total of coefficients a(1..total) that are nonzero.
struct Density {
  std::uint64_t nonzero = 0;
  std::uint64_t total = 0;

  double value() const noexcept { return total == 0 ? 0.0 : static_cast<double>(nonzero) / static_cast<double>(total); }
  friend bool operator==(const Density&, const Density&) = default;
};

/// Share of a(1..order) that is nonzero; a(0) is not counted.
inline Density nonzero_density(const TruncatedSeries& s, std::size_t order) {
  if (order == 0) throw error(errc::invalid_argument, "order must be positive");
  if (s.order() < order) throw error(errc::invalid_argument, "series is truncated below the requested order");
  Density d{0, order};
  for (std::size_t n = 1; n <= order; ++n) {
    if (sgn(s[n]) != 0) ++d.nonzero;
  }
  return d;
}

inline Density lacunarity_density(std::string_view form_id, std::size_t order) {
  if (order == 0) throw error(errc::invalid_argument, "order must be positive");
  return nonzero_density(expand(find_named_form(form_id).quotient, order), order);
}

}  // namespace tcore
