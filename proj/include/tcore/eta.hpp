#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcore/error.hpp"
#include "tcore/series.hpp"

namespace tcore {

/// A finite product prod_m eta(m tau)^{r_m}. Its q-expansion is
/// q^{prefactor24/24} times the Euler part prod_m (q^m; q^m)_inf^{r_m}.
class EtaQuotient {
 public:
  EtaQuotient() = default;

  EtaQuotient(std::initializer_list<std::pair<const std::uint32_t, int>> factors) {
    for (const auto& [m, r] : factors) multiply(m, r);
  }

  /// Multiplies in eta(m tau)^r; exponents on the same multiplier add up
  /// and factors whose exponent reaches zero are dropped.
  EtaQuotient& multiply(std::uint32_t m, int r) {
    if (m == 0) throw error(errc::invalid_argument, "eta multiplier must be positive");
    if (r == 0) return *this;
    const int updated = factors_[m] + r;
    if (updated == 0) {
      factors_.erase(m);
    } else {
      factors_[m] = updated;
    }
    prefactor24_ += static_cast<std::int64_t>(m) * r;
    return *this;
  }

  const std::map<std::uint32_t, int>& factors() const noexcept { return factors_; }

  /// Numerator of the q-exponent prefactor over 24, i.e. sum of m * r_m.
  std::int64_t prefactor24() const noexcept { return prefactor24_; }

  bool has_integral_prefactor() const noexcept { return prefactor24_ % 24 == 0; }

  /// Factors sorted by multiplier, e.g. "eta(1)^-1*eta(4)^4"; "1" if empty.
  std::string canonical() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [m, r] : factors_) {
      if (!out.empty()) out += '*';
      out += "eta(" + std::to_string(m) + ")^" + std::to_string(r);
    }
    return out;
  }

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::map<std::uint32_t, int> factors_;
  std::int64_t prefactor24_ = 0;
};

/// Parses products of eta(m)^r terms joined by '*' and '/', e.g.
/// "eta(1)^6*eta(3)^6" or "eta(4)^4/eta(1)". A missing exponent means 1,
/// exponents may carry a sign, whitespace is ignored and the literal "1"
/// denotes the empty product. Errors report the byte offset.
inline EtaQuotient parse_eta_quotient(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw error(errc::parse_error, "at position " + std::to_string(pos) + ": " + msg);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto read_int = [&](bool allow_sign) -> long {
    skip_ws();
    bool neg = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
      skip_ws();
    }
    long value = 0;
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == first) fail("expected an integer");
    pos += static_cast<std::size_t>(ptr - first);
    return neg ? -value : value;
  };

  EtaQuotient out;
  skip_ws();
  if (text.substr(pos) == "1") return out;
  if (pos == text.size()) fail("empty eta quotient");
  int sign = 1;
  for (;;) {
    skip_ws();
    if (text.substr(pos, 3) != "eta") fail("expected 'eta'");
    pos += 3;
    expect('(');
    const std::size_t m_pos = pos;
    const long m = read_int(false);
    if (m <= 0 || m > 1'000'000) {
      pos = m_pos;
      fail("eta multiplier must be in 1..1000000");
    }
    expect(')');
    long r = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      r = read_int(true);
      if (r < -100'000 || r > 100'000) fail("exponent out of range");
    }
    out.multiply(static_cast<std::uint32_t>(m), sign * static_cast<int>(r));
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '*') {
      sign = 1;
    } else if (text[pos] == '/') {
      sign = -1;
    } else {
      fail("expected '*', '/' or end of input");
    }
    ++pos;
  }
  return out;
}

/// Expansion of the Euler part prod_m (q^m;q^m)_inf^{r_m} through q^order.
/// Positive factors are multiplied in first, then the negative ones are
/// divided out one sparse pentagonal factor at a time.
inline TruncatedSeries expand_euler_part(const EtaQuotient& e, std::size_t order) {
  TruncatedSeries acc = TruncatedSeries::one(order);
  for (const auto& [m, r] : e.factors()) {
    if (r <= 0) continue;
    const auto factor = euler_product(m, order);
    for (int i = 0; i < r; ++i) acc = mul(acc, factor);
  }
  for (const auto& [m, r] : e.factors()) {
    if (r >= 0) continue;
    const auto factor = euler_product(m, order);
    for (int i = 0; i < -r; ++i) acc = divide(acc, factor);
  }
  return acc;
}

/// Full q-expansion including the q^{prefactor24/24} shift, through q^order.
inline TruncatedSeries expand(const EtaQuotient& e, std::size_t order) {
  if (!e.has_integral_prefactor()) {
    throw error(errc::fractional_prefactor,
                e.canonical() + " carries q^(" + std::to_string(e.prefactor24()) + "/24)");
  }
  if (e.prefactor24() < 0) {
    throw error(errc::negative_prefactor, e.canonical() + " has a pole at infinity");
  }
  const auto shift = static_cast<std::size_t>(e.prefactor24() / 24);
  if (shift > order) return TruncatedSeries(order);
  const auto euler = expand_euler_part(e, order - shift);
  SeriesBuilder out(order);
  for (std::size_t i = 0; i <= euler.order(); ++i) out[i + shift] = euler[i];
  return std::move(out).finish();
}

/// eta(t tau)^{k t} / eta(tau)^k, whose Euler part generates A_{t,k}(n).
inline EtaQuotient core_quotient(std::uint32_t t, std::uint32_t k) {
  EtaQuotient e;
  e.multiply(t, static_cast<int>(k * t));
  e.multiply(1, -static_cast<int>(k));
  return e;
}

/// sum_n A_{t,k}(n) q^n = (q^t;q^t)^{kt} / (q;q)^k through q^order.
inline TruncatedSeries phi_power(std::uint32_t t, std::uint32_t k, std::size_t order) {
  if (t < 2) throw error(errc::invalid_argument, "t must be at least 2");
  if (k < 1) throw error(errc::invalid_argument, "k must be at least 1");
  return expand_euler_part(core_quotient(t, k), order);
}

/// sum_n A_t(n) q^n, the generating function of t-core partitions.
inline TruncatedSeries phi(std::uint32_t t, std::size_t order) { return phi_power(t, 1, order); }

struct NamedForm {
  std::string id;
  EtaQuotient quotient;
  std::size_t first_exponent;
};

/// The five cusp-form eta products used by the closed formulas.
inline std::span<const NamedForm> named_forms() {
  static const std::vector<NamedForm> forms = {
      {"eta8_3", EtaQuotient{{3, 8}}, 1},
      {"eta6_1_6_3", EtaQuotient{{1, 6}, {3, 6}}, 1},
      {"eta6_4", EtaQuotient{{4, 6}}, 1},
      {"eta4_1_4_5", EtaQuotient{{1, 4}, {5, 4}}, 1},
      {"eta3_1_3_7", EtaQuotient{{1, 3}, {7, 3}}, 1},
  };
  return forms;
}

inline const NamedForm& find_named_form(std::string_view id) {
  for (const auto& f : named_forms()) {
    if (f.id == id) return f;
  }
  throw error(errc::unknown_form, "no registered form '" + std::string(id) + "'");
}

}  // namespace tcore
