// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tcore/cli/app.hpp"
#include "tcore/formulas.hpp"

namespace {

using namespace tcore;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const FormulaSpec& spec(std::string_view id) { return *find_formula(default_registry(), id); }

Outcome golden_prefixes() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<std::pair<const char*, std::vector<long>>> golden = {
      {"3,1", {1, 1, 2, 0, 2, 1}}, {"3,2", {1, 2, 5, 4, 8}},     {"3,3", {1, 3, 9, 13, 24}},
      {"3,4", {1, 4, 14, 28, 57}}, {"3,6", {1, 6, 27, 80, 207}}, {"4,2", {1, 2, 5, 10, 12}},
      {"5,1", {1, 1, 2, 3, 5}},    {"5,2", {1, 2, 5, 10, 20}},   {"7,1", {1, 1, 2, 3, 5}},
  };
  for (const auto& [id, values] : golden) {
    const auto& f = spec(id);
    const auto last = static_cast<std::uint32_t>(values.size() - 1);
    const auto series = phi_power(f.t, f.k, last);
    const auto oracle = count_tuples_series(last, f.t, f.k);
    for (std::uint32_t n = 0; n <= last; ++n) {
      const std::string where = std::string(id) + " n=" + std::to_string(n);
      o.require(closed_form(f, n) == values[n], "formula " + where);
      o.require(series[n] == values[n], "series " + where);
      o.require(oracle[n] == values[n], "oracle " + where);
    }
  }
  const double secs = seconds_since(start);
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s >= 1 s");
  if (o.pass) o.detail = "9 theorems x 3 routes, " + std::to_string(secs) + " s";
  return o;
}

Outcome cusp_prefixes() {
  Outcome o;
  const std::vector<std::pair<const char*, std::vector<std::pair<std::size_t, long>>>> golden = {
      {"eta8_3", {{1, 1}, {4, -8}, {7, 20}, {13, -70}, {16, 64}}},
      {"eta6_1_6_3", {{1, 1}, {2, -6}, {3, 9}, {4, 4}, {5, 6}}},
      {"eta6_4", {{1, 1}, {5, -6}, {9, 9}, {13, 10}, {17, -30}}},
      {"eta4_1_4_5", {{1, 1}, {2, -4}, {3, 2}, {4, 8}, {5, -5}}},
      {"eta3_1_3_7", {{1, 1}, {2, -3}, {4, 5}, {7, -7}, {8, -3}}},
  };
  for (const auto& [id, terms] : golden) {
    const std::size_t order = terms.back().first;
    const auto s = expand(find_named_form(id).quotient, order);
    std::vector<long> expected(order + 1, 0);
    for (const auto& [e, c] : terms) expected[e] = c;
    for (std::size_t n = 0; n <= order; ++n) {
      o.require(s[n] == expected[n], std::string(id) + " q^" + std::to_string(n));
    }
  }
  if (o.pass) o.detail = "5 eta products, zeros between printed terms included";
  return o;
}

Outcome three_way_verification() {
  Outcome o;
  const auto start = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"tcore", "verify", "all", "--terms", "500", "--oracle-cap", "25"}, out, err);
  const double secs = seconds_since(start);
  o.require(code == 0, "exit code " + std::to_string(code) + ": " + out.str() + err.str());
  std::istringstream lines(out.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    o.require(j["ok"] == true, "theorem " + j["theorem"].get<std::string>());
    o.require(j["terms_checked"] == 500, "terms_checked for " + j["theorem"].get<std::string>());
    o.require(j["oracle_checked"] == 26, "oracle_checked for " + j["theorem"].get<std::string>());
    ++count;
  }
  o.require(count == 9, "expected 9 report lines, got " + std::to_string(count));
  o.require(secs < 30.0, "runtime " + std::to_string(secs) + " s >= 30 s");
  if (o.pass) o.detail = "exit 0, n<=500 formula=series, n<=25 =oracle, " + std::to_string(secs) + " s";
  return o;
}

Outcome exact_divisibility() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& f : default_registry()) {
    if (f.divisor <= 1) continue;
    const auto cusp = cusp_expansion(f, f.index(500));
    const BigInt c = static_cast<unsigned long>(f.divisor);
    for (std::uint64_t n = 0; n <= 500; ++n) {
      const BigInt num = formula_numerator(f, n, cusp ? &*cusp : nullptr);
      o.require(num % c == 0, f.id + " m=" + std::to_string(f.index(n)));
    }
    ++checked;
  }
  o.require(checked == 6, "expected 6 theorems with divisor > 1");
  if (o.pass) o.detail = "6 theorems, n = 0..500, remainder 0";
  return o;
}

Outcome lambert_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  const auto lambert = lambert_a51(2000);
  const auto shifted = phi(5, 2000).shift(1);
  for (std::size_t n = 0; n <= 2000; ++n) o.require(lambert[n] == shifted[n], "q^" + std::to_string(n));
  const double secs = seconds_since(start);
  o.require(secs < 5.0, "runtime " + std::to_string(secs) + " s >= 5 s");
  if (o.pass) o.detail = "2000 coefficients, " + std::to_string(secs) + " s";
  return o;
}

Outcome sturm_values() {
  Outcome o;
  const std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> cases = {
      {9, 4, 4}, {3, 6, 2}, {16, 3, 6}, {5, 2, 1}, {7, 3, 2}};
  for (const auto& [level, weight, bound] : cases) {
    o.require(sturm_bound(level, weight) == bound,
              "(" + std::to_string(level) + "," + std::to_string(weight) + ") -> " +
                  std::to_string(sturm_bound(level, weight)));
  }
  if (o.pass) o.detail = "4, 2, 6, 1, 2";
  return o;
}

Outcome lacunarity_probe() {
  Outcome o;
  const auto d = lacunarity_density("eta8_3", 10000);
  o.require(3 * d.nonzero <= d.total, "density above 1/3");
  // Regression baseline measured for this implementation.
  o.require(d.nonzero == 1469, "baseline changed: " + std::to_string(d.nonzero) + "/10000");
  if (o.pass) o.detail = std::to_string(d.nonzero) + "/" + std::to_string(d.total) + " = " + std::to_string(d.value());
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(20160201);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = oracle::random_series(rng, 24);
    const auto b = oracle::random_series(rng, 24);
    const auto c = oracle::random_series(rng, 24);
    o.require(a * b == b * a, "commutativity");
    o.require((a * b) * c == a * (b * c), "associativity");
    o.require(a * (b + c) == a * b + a * c, "distributivity");
    o.require(oracle::to_poly(a * b) == oracle::schoolbook(oracle::to_poly(a), oracle::to_poly(b)), "schoolbook");
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_unit_series(rng, 20);
    o.require(a * invert(a) == TruncatedSeries::one(20), "invert round-trip");
  }
  for (std::size_t m : {1u, 2u, 5u}) {
    const auto e = euler_product(m, 3000);
    std::vector<bool> pent(3001, false);
    for (long j = -100; j <= 100; ++j) {
      const long g = static_cast<long>(m) * (j * (3 * j - 1) / 2);
      if (g >= 0 && g <= 3000) pent[g] = true;
    }
    for (std::size_t n = 0; n <= 3000; ++n) {
      o.require(pent[n] ? (e[n] == 1 || e[n] == -1) : e[n] == 0, "pentagonal sparsity m=" + std::to_string(m));
    }
  }
  for (std::uint32_t n = 0; n <= 12; ++n) {
    for_each_partition(n, [&](const Partition& p) {
      o.require(hook_numbers(p) == hook_numbers(p.conjugate()), "hook/conjugate symmetry");
    });
  }
  for (std::uint32_t m : {3u, 4u, 5u, 7u}) {
    const auto& chi = character_for_modulus(m);
    for (std::uint32_t a = 0; a < m; ++a)
      for (std::uint32_t b = 0; b < m; ++b) o.require(chi((a * b) % m) == chi(a) * chi(b), "multiplicativity " + chi.name());
  }
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto ds = oracle::divisors_by_scan(n);
    BigInt s1 = 0, s3 = 0, tw = 0, tq = 0, sharp = 0;
    for (auto d : ds) {
      s1 += static_cast<unsigned long>(d);
      s3 += oracle::pow_loop(d, 3);
      tw += chi4_2()(d) * oracle::pow_loop(d, 2);
      tq += chi7_4()(n / d) * oracle::pow_loop(d, 2);
      if (d % 5 != 0) sharp += oracle::pow_loop(d, 3);
    }
    unsigned v = 0;
    for (std::uint64_t r = n; r % 5 == 0; r /= 5) ++v;
    o.require(sigma(1, n) == s1 && sigma(3, n) == s3, "sigma n=" + std::to_string(n));
    o.require(sigma_twisted_d(chi4_2(), 2, n) == tw, "twisted_d n=" + std::to_string(n));
    o.require(sigma_twisted_q(chi7_4(), 2, n) == tq, "twisted_q n=" + std::to_string(n));
    o.require(sigma_sharp(5, 3, n) == sharp * oracle::pow_loop(5, 3 * v), "sharp n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "ring laws, invert, pentagonal, hooks, characters, divisor sums n<=10^4 (seed 20160201)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 golden prefixes", golden_prefixes},
      {"2 cusp-form prefixes", cusp_prefixes},
      {"3 three-way verification", three_way_verification},
      {"4 exact divisibility", exact_divisibility},
      {"5 lambert equivalence", lambert_equivalence},
      {"6 sturm values", sturm_values},
      {"7 lacunarity probe", lacunarity_probe},
      {"8 property suites", property_suites},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
