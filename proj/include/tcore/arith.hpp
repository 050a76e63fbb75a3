#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcore/bigint.hpp"
#include "tcore/error.hpp"

namespace tcore {

/// A real Dirichlet character stored as its value table on residues.
class DirichletCharacter {
 public:
  DirichletCharacter(std::string name, std::vector<int> values)
      : name_(std::move(name)), values_(std::move(values)) {
    if (values_.empty()) throw error(errc::invalid_argument, "character table must be non-empty");
  }

  std::uint32_t modulus() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<int>& values() const noexcept { return values_; }

  int operator()(std::uint64_t n) const noexcept { return values_[n % values_.size()]; }

 private:
  std::string name_;
  std::vector<int> values_;
};

/// (n|3)
inline const DirichletCharacter& chi3() {
  static const DirichletCharacter c("chi3", {0, 1, -1});
  return c;
}

/// +1 on 1 mod 4, -1 on 3 mod 4.
inline const DirichletCharacter& chi4_2() {
  static const DirichletCharacter c("chi4_2", {0, 1, 0, -1});
  return c;
}

/// +1 on 1,4 mod 5, -1 on 2,3 mod 5.
inline const DirichletCharacter& chi5_3() {
  static const DirichletCharacter c("chi5_3", {0, 1, -1, -1, 1});
  return c;
}

/// +1 on 1,2,4 mod 7, -1 on 3,5,6 mod 7.
inline const DirichletCharacter& chi7_4() {
  static const DirichletCharacter c("chi7_4", {0, 1, 1, -1, 1, -1, -1});
  return c;
}

inline const DirichletCharacter& character_for_modulus(std::uint32_t modulus) {
  switch (modulus) {
    case 3: return chi3();
    case 4: return chi4_2();
    case 5: return chi5_3();
    case 7: return chi7_4();
    default:
      throw error(errc::unknown_character, "no character registered for modulus " + std::to_string(modulus));
  }
}

/// Jacobi symbol (a|n) for odd positive n, by quadratic reciprocity.
inline int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) {
    throw error(errc::even_modulus, "jacobi symbol needs an odd positive modulus, got " + std::to_string(n));
  }
  std::int64_t x = a % n;
  if (x < 0) x += n;
  std::int64_t y = n;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const auto r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

inline unsigned valuation(std::uint64_t p, std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "valuation of 0 is undefined");
  if (p < 2) throw error(errc::invalid_argument, "valuation base must be prime");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

/// Positive divisors of n in increasing order, by trial division to sqrt(n).
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "divisors of 0 are undefined");
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d * d != n) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

/// sum_{d | n} d^j
inline BigInt sigma(unsigned j, std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "sigma(0) is undefined");
  BigInt sum = 0;
  for (auto d : divisors(n)) sum += ipow(d, j);
  return sum;
}

/// sum_{d | n} chi(d) d^j
inline BigInt sigma_twisted_d(const DirichletCharacter& chi, unsigned j, std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "sigma(0) is undefined");
  BigInt sum = 0;
  for (auto d : divisors(n)) {
    const int c = chi(d);
    if (c > 0) sum += ipow(d, j);
    if (c < 0) sum -= ipow(d, j);
  }
  return sum;
}

/// sum_{d | n} chi(n/d) d^j; the character sees the co-divisor.
inline BigInt sigma_twisted_q(const DirichletCharacter& chi, unsigned j, std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "sigma(0) is undefined");
  BigInt sum = 0;
  for (auto d : divisors(n)) {
    const int c = chi(n / d);
    if (c > 0) sum += ipow(d, j);
    if (c < 0) sum -= ipow(d, j);
  }
  return sum;
}

/// p^{j nu_p(n)} * sum over divisors d of n prime to p of d^j. Only the
/// pairs (p, j) = (3, 5) and (5, 3) occur in the registry.
inline BigInt sigma_sharp(unsigned p, unsigned j, std::uint64_t n) {
  if (n == 0) throw error(errc::zero_input, "sigma(0) is undefined");
  if (!((p == 3 && j == 5) || (p == 5 && j == 3))) {
    throw error(errc::unsupported_pair,
                "sigma_sharp defined for (p,j) in {(3,5),(5,3)}, got (" + std::to_string(p) + "," +
                    std::to_string(j) + ")");
  }
  const unsigned v = valuation(p, n);
  BigInt sum = 0;
  for (auto d : divisors(n)) {
    if (d % p != 0) sum += ipow(d, j);
  }
  return sum * ipow(p, static_cast<unsigned long>(j) * v);
}

}  // namespace tcore
