#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace tcore {

using BigInt = mpz_class;

namespace detail {

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");

inline BigInt from_int128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
  BigInt out;
  const auto hi = static_cast<unsigned long>(mag >> 64);
  const auto lo = static_cast<unsigned long>(mag);
  if (hi == 0) {
    out = lo;
  } else {
    mpz_set_ui(out.get_mpz_t(), hi);
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), lo);
  }
  if (neg) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
  return out;
}

inline bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace detail

inline BigInt ipow(std::uint64_t base, unsigned long exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

}  // namespace tcore
