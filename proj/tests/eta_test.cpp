#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcore/eta.hpp"

namespace tcore {
namespace {

// Nonzero-and-zero prefix of a full expansion at the listed exponents.
void expect_coefficients(const TruncatedSeries& s, std::initializer_list<std::pair<std::size_t, long>> expected) {
  for (const auto& [n, c] : expected) EXPECT_EQ(s[n], c) << "q^" << n;
}

TEST(EtaQuotient, PrefactorTracksFactors) {
  EtaQuotient e{{3, 3}, {1, -1}};
  EXPECT_EQ(e.prefactor24(), 8);
  EXPECT_FALSE(e.has_integral_prefactor());
  e.multiply(1, 1);
  EXPECT_EQ(e.prefactor24(), 9);
  EXPECT_EQ(e.factors().count(1), 0u);
  EXPECT_EQ(e.canonical(), "eta(3)^3");
  EXPECT_EQ(EtaQuotient{}.canonical(), "1");
}

TEST(EtaQuotient, CoreQuotientPrefactors) {
  EXPECT_EQ(core_quotient(3, 1).prefactor24(), 8);
  EXPECT_EQ(core_quotient(4, 1).prefactor24(), 15);
  EXPECT_EQ(core_quotient(5, 1).prefactor24(), 24);
  EXPECT_EQ(core_quotient(7, 1).prefactor24(), 48);
  for (std::uint32_t t : {3u, 4u, 5u, 7u}) EXPECT_EQ(core_quotient(t, 1).prefactor24(), t * t - 1);
}

TEST(EtaParse, Grammar) {
  EXPECT_EQ(parse_eta_quotient("eta(3)^8"), (EtaQuotient{{3, 8}}));
  EXPECT_EQ(parse_eta_quotient("eta(1)^6*eta(3)^6"), (EtaQuotient{{1, 6}, {3, 6}}));
  EXPECT_EQ(parse_eta_quotient("eta(4)^4/eta(1)"), (EtaQuotient{{4, 4}, {1, -1}}));
  EXPECT_EQ(parse_eta_quotient(" eta( 2 )^-2 * eta(1)^+3 "), (EtaQuotient{{2, -2}, {1, 3}}));
  EXPECT_EQ(parse_eta_quotient("eta(1)^0").canonical(), "1");
  EXPECT_EQ(parse_eta_quotient("1").canonical(), "1");
  EXPECT_EQ(parse_eta_quotient("eta(4)^4/eta(1)").canonical(), "eta(1)^-1*eta(4)^4");
}

TEST(EtaParse, ErrorsCarryPosition) {
  for (const char* bad : {"", "eta", "eta(0)^2", "eta(3)^", "eta(3)^8*", "eta(3)8", "zeta(3)", "eta(3)^8 eta(1)"}) {
    try {
      parse_eta_quotient(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::parse_error) << bad;
      EXPECT_NE(std::string(e.what()).find("position"), std::string::npos) << e.what();
    }
  }
}

TEST(EtaExpand, CuspFormPrefixes) {
  expect_coefficients(expand(EtaQuotient{{3, 8}}, 16),
                      {{0, 0}, {1, 1}, {4, -8}, {7, 20}, {10, 0}, {13, -70}, {16, 64}, {2, 0}, {3, 0}});
  expect_coefficients(expand(EtaQuotient{{4, 6}}, 17), {{1, 1}, {5, -6}, {9, 9}, {13, 10}, {17, -30}});
  expect_coefficients(expand(EtaQuotient{{1, 3}, {7, 3}}, 8),
                      {{1, 1}, {2, -3}, {3, 0}, {4, 5}, {5, 0}, {6, 0}, {7, -7}, {8, -3}});
  expect_coefficients(expand(EtaQuotient{{1, 6}, {3, 6}}, 5), {{1, 1}, {2, -6}, {3, 9}, {4, 4}, {5, 6}});
  expect_coefficients(expand(EtaQuotient{{1, 4}, {5, 4}}, 5), {{1, 1}, {2, -4}, {3, 2}, {4, 8}, {5, -5}});
}

TEST(EtaExpand, RegisteredFormsStartAtQ) {
  for (const auto& f : named_forms()) {
    const auto s = expand(f.quotient, 30);
    EXPECT_EQ(s[0], 0) << f.id;
    EXPECT_EQ(s[1], 1) << f.id;
    EXPECT_EQ(f.first_exponent, 1u);
  }
  EXPECT_THROW(find_named_form("eta99"), error);
}

TEST(EtaExpand, MatchesLiteralProduct) {
  // eta(1)^4 eta(5)^4 / q = (q;q)^4 (q^5;q^5)^4, expanded factor by factor.
  const std::size_t order = 200;
  const auto direct = oracle::schoolbook(oracle::euler_power_naive(1, 4, order), oracle::euler_power_naive(5, 4, order));
  EXPECT_EQ(oracle::to_poly(expand_euler_part(EtaQuotient{{1, 4}, {5, 4}}, order)), direct);

  // Negative exponents: (q^3;q^3)^3 / (q;q).
  const auto phi3 = oracle::schoolbook(oracle::euler_power_naive(3, 3, order), oracle::euler_inverse_power_naive(1, 1, order));
  EXPECT_EQ(oracle::to_poly(phi(3, order)), phi3);
}

TEST(EtaExpand, FractionalPrefactorRejected) {
  try {
    expand(EtaQuotient{{4, 4}, {1, -1}}, 10);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::fractional_prefactor);
  }
  EXPECT_NO_THROW(expand_euler_part(EtaQuotient{{4, 4}, {1, -1}}, 10));
  EXPECT_THROW(expand(EtaQuotient{{1, -24}}, 10), error);
  EXPECT_EQ(expand(EtaQuotient{}, 3), TruncatedSeries::one(3));
  EXPECT_EQ(expand(EtaQuotient{{1, 48}}, 1), TruncatedSeries(1));
}

TEST(Phi, Prefixes) {
  EXPECT_EQ(phi(3, 6), TruncatedSeries({1, 1, 2, 0, 2, 1, 2}));
  EXPECT_EQ(phi(5, 4), TruncatedSeries({1, 1, 2, 3, 5}));
  const auto p2 = phi(2, 200);
  for (std::size_t n = 0; n <= 200; ++n) {
    bool triangular = false;
    for (std::size_t j = 0; j * (j + 1) / 2 <= n; ++j) triangular = triangular || j * (j + 1) / 2 == n;
    EXPECT_EQ(p2[n], triangular ? 1 : 0) << n;
  }
}

TEST(Phi, PowerPrefixes) {
  EXPECT_EQ(phi_power(3, 4, 4), TruncatedSeries({1, 4, 14, 28, 57}));
  EXPECT_EQ(phi_power(4, 2, 4), TruncatedSeries({1, 2, 5, 10, 12}));
  EXPECT_EQ(phi_power(3, 3, 4), TruncatedSeries({1, 3, 9, 13, 24}));
  EXPECT_EQ(phi_power(3, 2, 4), TruncatedSeries({1, 2, 5, 4, 8}));
  for (std::uint32_t t : {2u, 3u, 4u, 5u, 7u}) EXPECT_EQ(phi_power(t, 1, 50), phi(t, 50));
  EXPECT_THROW(phi_power(1, 1, 5), error);
  EXPECT_THROW(phi_power(3, 0, 5), error);
}

TEST(Phi, PowerEqualsPowOfPhi) {
  for (std::uint32_t t : {2u, 3u, 4u, 5u, 7u}) {
    for (std::uint32_t k : {1u, 2u, 3u, 4u, 6u}) EXPECT_EQ(phi_power(t, k, 120), pow(phi(t, 120), k)) << t << "," << k;
  }
}

}  // namespace
}  // namespace tcore
