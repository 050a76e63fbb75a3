#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "tcore/bigint.hpp"
#include "tcore/error.hpp"

namespace tcore {

/// Exact power series in q truncated after q^order. Coefficient n is stored
/// at index n and there are always order+1 of them. Binary operations on
/// series of different orders produce a result of the smaller order.
class TruncatedSeries {
 public:
  using size_type = std::size_t;

  /// The zero series of the given order.
  explicit TruncatedSeries(size_type order) : coeffs_(order + 1) {}

  explicit TruncatedSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw error(errc::invalid_argument, "a truncated series needs at least one coefficient");
    }
  }

  TruncatedSeries(std::initializer_list<long> coeffs) {
    if (coeffs.size() == 0) {
      throw error(errc::invalid_argument, "a truncated series needs at least one coefficient");
    }
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
  }

  static TruncatedSeries constant(long c, size_type order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static TruncatedSeries one(size_type order) { return constant(1, order); }

  size_type order() const noexcept { return coeffs_.size() - 1; }
  const BigInt& operator[](size_type n) const { return coeffs_[n]; }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of q^n, or nullopt when n lies beyond the truncation.
  std::optional<BigInt> at(size_type n) const {
    if (n > order()) return std::nullopt;
    return coeffs_[n];
  }

  std::size_t nonzero_count() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return sgn(c) != 0; }));
  }

  TruncatedSeries truncate(size_type order) const {
    std::vector<BigInt> out(coeffs_.begin(),
                            coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
    return TruncatedSeries(std::move(out));
  }

  /// Substitutes q -> q^m, keeping the order.
  TruncatedSeries dilate(size_type m) const {
    if (m == 0) throw error(errc::invalid_argument, "dilation factor must be positive");
    TruncatedSeries out(order());
    for (size_type i = 0; i * m <= order(); ++i) out.coeffs_[i * m] = coeffs_[i];
    return out;
  }

  /// Multiplies by q^s, keeping the order (high terms fall off).
  TruncatedSeries shift(size_type s) const {
    TruncatedSeries out(order());
    for (size_type i = 0; i + s <= order(); ++i) out.coeffs_[i + s] = coeffs_[i];
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    bool first = true;
    for (size_type i = 0; i <= s.order(); ++i) {
      if (sgn(s.coeffs_[i]) == 0) continue;
      if (!first) os << ' ';
      os << i << ':' << s.coeffs_[i];
      first = false;
    }
    if (first) os << '0';
    return os << " + O(q^" << s.order() + 1 << ')';
  }

 private:
  friend class SeriesBuilder;
  std::vector<BigInt> coeffs_;
};

/// Mutable staging area for kernels that produce a series coefficient by
/// coefficient; `finish` hands the buffer over to an immutable series.
class SeriesBuilder {
 public:
  explicit SeriesBuilder(std::size_t order) : coeffs_(order + 1) {}
  explicit SeriesBuilder(const TruncatedSeries& s) : coeffs_(s.coeffs_) {}

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  BigInt& operator[](std::size_t n) { return coeffs_[n]; }
  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }

  TruncatedSeries finish() && { return TruncatedSeries(std::move(coeffs_)); }

 private:
  std::vector<BigInt> coeffs_;
};

namespace detail {

struct sparse_term {
  std::size_t exp;
  const BigInt* coeff;
};

inline std::vector<sparse_term> nonzero_terms(const TruncatedSeries& s, std::size_t order) {
  std::vector<sparse_term> out;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(s[i]) != 0) out.push_back({i, &s[i]});
  }
  return out;
}

/// Schoolbook product over GMP integers; skips zero coefficients on both
/// sides so dilated and pentagonal operands cost O(nnz(a) * nnz(b)).
inline TruncatedSeries mul_bigint(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  SeriesBuilder out(order);
  const auto bt = nonzero_terms(b, order);
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    mpz_srcptr ai = a[i].get_mpz_t();
    for (const auto& t : bt) {
      if (i + t.exp > order) break;
      mpz_addmul(out[i + t.exp].get_mpz_t(), ai, t.coeff->get_mpz_t());
    }
  }
  return std::move(out).finish();
}

/// Whether every partial sum of a*b provably fits in a signed 128-bit
/// accumulator: operands fit in int64 and maxA * maxB * min(nnz) < 2^126.
inline bool int128_product_safe(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t order) {
  std::size_t bits_a = 0, bits_b = 0, nnz_a = 0, nnz_b = 0;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(a[i]) != 0) {
      if (!fits_int64(a[i])) return false;
      bits_a = std::max(bits_a, bit_length(a[i]));
      ++nnz_a;
    }
    if (sgn(b[i]) != 0) {
      if (!fits_int64(b[i])) return false;
      bits_b = std::max(bits_b, bit_length(b[i]));
      ++nnz_b;
    }
  }
  std::size_t terms = std::min(nnz_a, nnz_b);
  std::size_t bits_terms = 0;
  while (terms > 0) {
    ++bits_terms;
    terms >>= 1;
  }
  return bits_a + bits_b + bits_terms <= 126;
}

/// Same product as `mul_bigint`, accumulated in __int128. Only valid when
/// `int128_product_safe` holds.
inline TruncatedSeries mul_int128(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  std::vector<std::pair<std::size_t, std::int64_t>> bt;
  std::vector<std::int64_t> av(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    av[i] = a[i].get_si();
    if (sgn(b[i]) != 0) bt.emplace_back(i, b[i].get_si());
  }
  std::vector<__int128> acc(order + 1, 0);
  for (std::size_t i = 0; i <= order; ++i) {
    if (av[i] == 0) continue;
    const __int128 ai = av[i];
    for (const auto& [j, bj] : bt) {
      if (i + j > order) break;
      acc[i + j] += ai * bj;
    }
  }
  SeriesBuilder out(order);
  for (std::size_t i = 0; i <= order; ++i) {
    if (acc[i] != 0) out[i] = from_int128(acc[i]);
  }
  return std::move(out).finish();
}

}  // namespace detail

inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  SeriesBuilder out(order);
  for (std::size_t i = 0; i <= order; ++i) out[i] = a[i] + b[i];
  return std::move(out).finish();
}

inline TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  SeriesBuilder out(order);
  for (std::size_t i = 0; i <= order; ++i) out[i] = a[i] - b[i];
  return std::move(out).finish();
}

inline TruncatedSeries scale(const TruncatedSeries& a, const BigInt& c) {
  SeriesBuilder out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) out[i] = a[i] * c;
  return std::move(out).finish();
}

/// Cauchy product truncated at the smaller order. Uses a 128-bit
/// accumulator when the coefficient bound allows it, GMP otherwise; both
/// kernels produce identical coefficients.
inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  if (detail::int128_product_safe(a, b, order)) return detail::mul_int128(a, b);
  return detail::mul_bigint(a, b);
}

inline TruncatedSeries pow(const TruncatedSeries& a, unsigned k) {
  if (k == 0) throw error(errc::invalid_argument, "pow requires k >= 1");
  std::optional<TruncatedSeries> result;
  TruncatedSeries base = a;
  for (;;) {
    if (k & 1U) result = result ? mul(*result, base) : base;
    k >>= 1U;
    if (k == 0) break;
    base = mul(base, base);
  }
  return *result;
}

/// a / b for b with constant term +1 or -1, via the recurrence
/// b0 * c_n = a_n - sum_{j>=1} b_j c_{n-j}. Zero coefficients of b are
/// skipped, so dividing by a sparse product is O(order * nnz(b)).
inline TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b[0] != 1 && b[0] != -1) {
    throw error(errc::non_unit_constant_term, "constant term must be +1 or -1, got " + to_string(b[0]));
  }
  const bool negate = b[0] == -1;
  const std::size_t order = std::min(a.order(), b.order());
  const auto bt = detail::nonzero_terms(b, order);
  SeriesBuilder out(order);
  for (std::size_t n = 0; n <= order; ++n) {
    BigInt& c = out[n];
    c = a[n];
    for (const auto& t : bt) {
      if (t.exp == 0) continue;
      if (t.exp > n) break;
      mpz_submul(c.get_mpz_t(), t.coeff->get_mpz_t(), out[n - t.exp].get_mpz_t());
    }
    if (negate) mpz_neg(c.get_mpz_t(), c.get_mpz_t());
  }
  return std::move(out).finish();
}

inline TruncatedSeries invert(const TruncatedSeries& a) {
  return divide(TruncatedSeries::one(a.order()), a);
}

/// (q^m; q^m)_inf = prod_{n>=1} (1 - q^{mn}) truncated at `order`, written
/// down directly from Euler's pentagonal number theorem: the coefficient of
/// q^{m j(3j-1)/2} is (-1)^j for every integer j, all others vanish.
inline TruncatedSeries euler_product(std::size_t m, std::size_t order) {
  if (m == 0) throw error(errc::invalid_argument, "euler_product requires m >= 1");
  SeriesBuilder out(order);
  out[0] = 1;
  for (std::size_t j = 1;; ++j) {
    const std::size_t lo = m * (j * (3 * j - 1) / 2);
    if (lo > order) break;
    const long sign = (j % 2 == 0) ? 1 : -1;
    out[lo] = sign;
    const std::size_t hi = m * (j * (3 * j + 1) / 2);
    if (hi <= order) out[hi] = sign;
  }
  return std::move(out).finish();
}

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b); }

}  // namespace tcore
