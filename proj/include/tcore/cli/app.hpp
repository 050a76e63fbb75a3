#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcore/cli/cache.hpp"
#include "tcore/cli/config.hpp"
#include "tcore/cores.hpp"
#include "tcore/error.hpp"
#include "tcore/eta.hpp"
#include "tcore/formulas.hpp"
#include "tcore/manifest.hpp"

namespace tcore::cli {

/// Process exit codes shared by every subcommand.
enum exit_code : int {
  exit_ok = 0,
  exit_mismatch = 1,
  exit_usage = 2,
};

namespace detail {

struct Settings {
  std::uint64_t terms = 500;
  std::uint64_t oracle_cap = 25;
  std::uint64_t enumeration_cap = 40;
  std::uint64_t jobs = 1;
  std::string registry_file;
  std::string cache_file = "tcore-cache.txt";
  bool cache = false;

  static Settings from(const Config& cfg) {
    Settings s;
    s.terms = cfg.get_uint("terms", s.terms);
    s.oracle_cap = cfg.get_uint("oracle_cap", s.oracle_cap);
    s.enumeration_cap = cfg.get_uint("enumeration_cap", s.enumeration_cap);
    s.jobs = cfg.get_uint("jobs", s.jobs);
    s.registry_file = cfg.get_string("registry", s.registry_file);
    s.cache_file = cfg.get_string("cache_file", s.cache_file);
    s.cache = cfg.get_bool("cache", s.cache);
    return s;
  }

  OracleConfig oracle() const { return {static_cast<std::uint32_t>(std::min<std::uint64_t>(enumeration_cap, 1000))}; }

  std::vector<FormulaSpec> registry() const {
    if (registry_file.empty()) return default_registry();
    std::ifstream in(registry_file);
    if (!in) throw error(errc::invalid_argument, "cannot read registry file '" + registry_file + "'");
    return read_registry(in);
  }
};

/// Euler-part expansion, served from and written back to the coefficient
/// cache when enabled.
inline TruncatedSeries euler_part_cached(const EtaQuotient& e, std::size_t order, const Settings& s) {
  if (!s.cache) return expand_euler_part(e, order);
  CoefficientCache cache(s.cache_file);
  const auto key = e.canonical();
  if (auto hit = cache.lookup(key, order)) return *std::move(hit);
  auto series = expand_euler_part(e, order);
  cache.store(key, series);
  cache.save();
  return series;
}

enum class Method { formula, series, oracle, all };

inline const std::map<std::string, Method>& method_names() {
  static const std::map<std::string, Method> names = {
      {"formula", Method::formula}, {"series", Method::series}, {"oracle", Method::oracle}, {"all", Method::all}};
  return names;
}

/// Values of A_{t,k}(n) for n in [first, last] by each requested route;
/// a route that does not apply leaves its column empty.
struct Columns {
  std::vector<std::optional<BigInt>> formula, series, oracle;
};

inline Columns compute_columns(std::uint32_t t, std::uint32_t k, std::uint64_t first, std::uint64_t last,
                               Method method, const Settings& s) {
  const auto registry = s.registry();
  const FormulaSpec* spec = find_formula(registry, t, k);
  const auto count = static_cast<std::size_t>(last - first + 1);
  Columns cols{std::vector<std::optional<BigInt>>(count), std::vector<std::optional<BigInt>>(count),
               std::vector<std::optional<BigInt>>(count)};

  if (method == Method::formula && spec == nullptr) {
    throw error(errc::invalid_argument, "no closed formula registered for (t,k) = (" + theorem_id(t, k) + ")");
  }
  if (method == Method::oracle && last > s.oracle().max_n) {
    throw error(errc::budget_exceeded, "oracle enumeration is capped at n = " + std::to_string(s.oracle().max_n));
  }

  if ((method == Method::formula || method == Method::all) && spec != nullptr) {
    const auto cusp = cusp_expansion(*spec, spec->index(last));
    for (std::uint64_t n = first; n <= last; ++n) cols.formula[n - first] = closed_form(*spec, n, cusp ? &*cusp : nullptr);
  }
  if (method == Method::series || method == Method::all) {
    const auto series = euler_part_cached(core_quotient(t, k), last, s);
    for (std::uint64_t n = first; n <= last; ++n) cols.series[n - first] = series[n];
  }
  if (method == Method::oracle || method == Method::all) {
    const std::uint64_t oracle_last = std::min<std::uint64_t>(last, s.oracle().max_n);
    if (first <= oracle_last) {
      const auto oracle = count_tuples_series(static_cast<std::uint32_t>(oracle_last), t, k, s.oracle());
      for (std::uint64_t n = first; n <= oracle_last; ++n) cols.oracle[n - first] = oracle[n];
    }
  }
  return cols;
}

inline void check_tk(std::uint32_t t, std::uint32_t k) {
  if (t < 2) throw error(errc::invalid_argument, "--t must be at least 2");
  if (k < 1) throw error(errc::invalid_argument, "--k must be at least 1");
}

inline nlohmann::json report_to_json(const VerificationReport& r, const FormulaSpec& spec) {
  nlohmann::json mismatch = nullptr;
  if (r.first_mismatch) {
    const auto& m = *r.first_mismatch;
    mismatch = {
        {"n", m.n},
        {"formula", m.formula ? json_integer(*m.formula) : nlohmann::json(nullptr)},
        {"series", json_integer(m.series)},
        {"oracle", m.oracle ? json_integer(*m.oracle) : nlohmann::json(nullptr)},
        {"reason", m.reason},
    };
  }
  return {
      {"theorem", r.theorem},
      {"t", spec.t},
      {"k", spec.k},
      {"ok", r.ok()},
      {"terms_checked", r.terms_checked},
      {"oracle_checked", r.oracle_checked},
      {"sturm_bound", r.sturm_bound},
      {"terms_cover_sturm_bound", r.terms_checked >= r.sturm_bound},
      {"first_mismatch", mismatch},
      {"elapsed_ms", std::chrono::duration<double, std::milli>(r.elapsed).count()},
  };
}

/// CLI11 wants a mutable argv; keeps the strings alive for the parse.
class Argv {
 public:
  explicit Argv(const std::vector<std::string>& args) : storage_(args) {
    for (auto& a : storage_) ptrs_.push_back(a.data());
  }
  int argc() const { return static_cast<int>(ptrs_.size()); }
  char** argv() { return ptrs_.data(); }

 private:
  std::vector<std::string> storage_;
  std::vector<char*> ptrs_;
};

}  // namespace detail

/// Entry point of the `tcore` tool. `args[0]` is the program name.
/// Returns 0 on success, 1 on a verification mismatch and 2 on any usage,
/// parse or configuration error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;

  Settings s;
  try {
    s = Settings::from(Config::from_environment());
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  CLI::App app{"Counts t-core partition k-tuples by closed formula, eta-quotient series and enumeration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tcore 1.0.0");

  auto add_registry = [&](CLI::App* cmd) {
    cmd->add_option("--registry", s.registry_file, "Theorem registry manifest (JSON)");
  };
  auto add_cache = [&](CLI::App* cmd) {
    cmd->add_flag("--cache,!--no-cache", s.cache, "Use the coefficient cache");
    cmd->add_option("--cache-file", s.cache_file, "Coefficient cache location");
  };
  auto add_enum_cap = [&](CLI::App* cmd) {
    cmd->add_option("--enum-cap", s.enumeration_cap, "Largest n the partition enumeration may reach");
  };

  std::uint32_t t = 0, k = 1;
  std::uint64_t n = 0;
  std::string method_name = "auto";
  auto* compute = app.add_subcommand("compute", "Print A_{t,k}(n)");
  compute->add_option("--t", t, "Core parameter t (>= 2)")->required();
  compute->add_option("--k", k, "Tuple length k (>= 1)");
  compute->add_option("--n", n, "Index n")->required();
  compute->add_option("--method", method_name, "formula | series | oracle | all (default: formula if registered)")
      ->check(CLI::IsMember({"auto", "formula", "series", "oracle", "all"}));
  add_registry(compute);
  add_cache(compute);
  add_enum_cap(compute);

  std::string theorem;
  auto* verify_cmd = app.add_subcommand("verify", "Check closed formulas against the series and the oracle");
  verify_cmd->add_option("theorem", theorem, "Theorem id such as 3,4, or 'all'")->required();
  verify_cmd->add_option("--terms", s.terms, "Check n = 0 .. terms-1");
  verify_cmd->add_option("--oracle-cap", s.oracle_cap, "Also compare with enumeration for n <= cap");
  verify_cmd->add_option("--jobs", s.jobs, "Theorems verified concurrently");
  add_registry(verify_cmd);
  add_enum_cap(verify_cmd);

  std::string eta_text;
  std::uint64_t expand_terms = 20;
  bool dense = false;
  auto* expand_cmd = app.add_subcommand("expand", "Print the q-expansion of an eta quotient");
  expand_cmd->add_option("quotient", eta_text, "e.g. \"eta(3)^8\" or \"eta(4)^4/eta(1)\"")->required();
  expand_cmd->add_option("--terms", expand_terms, "Highest power of q to print");
  expand_cmd->add_flag("--dense", dense, "Print zero coefficients too");
  add_cache(expand_cmd);

  std::string range = "0..10";
  std::string format = "csv";
  std::string out_file;
  std::string table_method = "all";
  auto* table = app.add_subcommand("table", "Tabulate A_{t,k}(n) over a range of n");
  table->add_option("--t", t, "Core parameter t (>= 2)")->required();
  table->add_option("--k", k, "Tuple length k (>= 1)");
  table->add_option("--range", range, "Inclusive range a..b");
  table->add_option("--method", table_method, "formula | series | oracle | all")
      ->check(CLI::IsMember({"formula", "series", "oracle", "all"}));
  table->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", out_file, "Write to file instead of stdout");
  add_registry(table);
  add_cache(table);
  add_enum_cap(table);

  std::uint64_t level = 1, weight = 1;
  auto* sturm = app.add_subcommand("sturm", "Print the Sturm bound for Gamma0(level) and weight");
  sturm->add_option("--level", level, "Level N")->required();
  sturm->add_option("--weight", weight, "Weight k")->required();

  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the coefficient cache");
  cache_cmd->require_subcommand(1);
  cache_cmd->add_option("--cache-file", s.cache_file, "Coefficient cache location");
  auto* cache_path = cache_cmd->add_subcommand("path", "Print the cache location");
  auto* cache_list = cache_cmd->add_subcommand("list", "List cached expansions");
  auto* cache_clear = cache_cmd->add_subcommand("clear", "Delete the cache file");
  for (auto* leaf : {cache_path, cache_list, cache_clear}) leaf->fallthrough();

  auto* registry_cmd = app.add_subcommand("registry", "Print the theorem registry manifest");
  add_registry(registry_cmd);

  Argv argv(args.empty() ? std::vector<std::string>{"tcore"} : args);
  try {
    app.parse(argv.argc(), argv.argv());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*compute) {
      check_tk(t, k);
      const auto registry = s.registry();
      Method method;
      if (method_name == "auto") {
        method = find_formula(registry, t, k) != nullptr ? Method::formula : Method::series;
      } else {
        method = method_names().at(method_name);
      }
      if (method == Method::oracle && n > s.oracle().max_n) {
        throw error(errc::budget_exceeded, "oracle enumeration is capped at n = " + std::to_string(s.oracle().max_n));
      }
      const auto cols = compute_columns(t, k, n, n, method, s);
      std::vector<std::pair<std::string, BigInt>> values;
      if (cols.formula[0]) values.emplace_back("formula", *cols.formula[0]);
      if (cols.series[0]) values.emplace_back("series", *cols.series[0]);
      if (cols.oracle[0]) values.emplace_back("oracle", *cols.oracle[0]);
      bool agree = true;
      for (const auto& [name, v] : values) agree = agree && v == values.front().second;
      if (agree) {
        out << values.front().second << '\n';
        return exit_ok;
      }
      for (const auto& [name, v] : values) out << name << '=' << v << '\n';
      err << "error: methods disagree for A_{" << t << ',' << k << "}(" << n << ")\n";
      return exit_mismatch;
    }

    if (*verify_cmd) {
      if (s.terms == 0) throw error(errc::invalid_argument, "--terms must be positive");
      const auto registry = s.registry();
      std::vector<FormulaSpec> selected;
      if (theorem == "all") {
        selected = registry;
      } else {
        const FormulaSpec* spec = find_formula(registry, theorem);
        if (spec == nullptr) throw error(errc::invalid_argument, "unknown theorem id '" + theorem + "'");
        selected.push_back(*spec);
      }
      const auto reports = verify_all(selected, s.terms, s.oracle_cap, static_cast<unsigned>(s.jobs), s.oracle());
      bool ok = true;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        out << report_to_json(reports[i], selected[i]).dump() << '\n';
        ok = ok && reports[i].ok();
      }
      return ok ? exit_ok : exit_mismatch;
    }

    if (*expand_cmd) {
      const auto quotient = parse_eta_quotient(eta_text);
      std::size_t shift = 0;
      std::size_t euler_order = expand_terms;
      if (quotient.has_integral_prefactor() && quotient.prefactor24() >= 0) {
        shift = static_cast<std::size_t>(quotient.prefactor24() / 24);
      } else {
        err << "note: prefactor q^(" << quotient.prefactor24() << "/24) is not a non-negative integer power; "
            << "printing the Euler part " << quotient.canonical() << '\n';
      }
      std::ostringstream line;
      bool first = true;
      auto emit = [&](std::size_t e, const BigInt& c) {
        if (!first) line << ' ';
        line << e << ':' << c;
        first = false;
      };
      if (shift <= expand_terms) {
        euler_order = expand_terms - shift;
        const auto euler = euler_part_cached(quotient, euler_order, s);
        if (dense) {
          for (std::size_t i = 0; i < shift; ++i) emit(i, BigInt(0));
        }
        for (std::size_t i = 0; i <= euler.order(); ++i) {
          if (dense || sgn(euler[i]) != 0) emit(i + shift, euler[i]);
        }
      } else if (dense) {
        for (std::size_t i = 0; i <= expand_terms; ++i) emit(i, BigInt(0));
      }
      out << line.str() << '\n';
      return exit_ok;
    }

    if (*table) {
      check_tk(t, k);
      static const std::regex range_re(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
      std::smatch m;
      if (!std::regex_match(range, m, range_re)) {
        throw error(errc::invalid_argument, "--range must look like a..b, got '" + range + "'");
      }
      const std::uint64_t first = std::stoull(m[1]);
      const std::uint64_t last = std::stoull(m[2]);
      if (first > last) throw error(errc::invalid_argument, "--range start exceeds end");
      const auto cols = compute_columns(t, k, first, last, method_names().at(table_method), s);

      std::ostringstream body;
      if (format == "csv") {
        body << "n,formula,series,oracle\n";
        for (std::uint64_t i = 0; i <= last - first; ++i) {
          body << first + i;
          for (const auto* col : {&cols.formula, &cols.series, &cols.oracle}) {
            body << ',';
            if ((*col)[i]) body << *(*col)[i];
          }
          body << '\n';
        }
      } else {
        auto rows = nlohmann::json::array();
        for (std::uint64_t i = 0; i <= last - first; ++i) {
          auto cell = [&](const std::vector<std::optional<BigInt>>& col) {
            return col[i] ? json_integer(*col[i]) : nlohmann::json(nullptr);
          };
          rows.push_back({{"n", first + i},
                          {"formula", cell(cols.formula)},
                          {"series", cell(cols.series)},
                          {"oracle", cell(cols.oracle)}});
        }
        body << rows.dump() << '\n';
      }
      if (out_file.empty()) {
        out << body.str();
      } else {
        std::ofstream f(out_file, std::ios::binary | std::ios::trunc);
        if (!f) throw error(errc::invalid_argument, "cannot write '" + out_file + "'");
        f << body.str();
      }
      return exit_ok;
    }

    if (*sturm) {
      out << sturm_bound(level, weight) << '\n';
      return exit_ok;
    }

    if (*cache_cmd) {
      CoefficientCache cache(s.cache_file);
      if (*cache_path) out << cache.path().string() << '\n';
      if (*cache_list) {
        for (const auto& [key, order] : cache.entries()) out << key << '\t' << order << '\n';
      }
      if (*cache_clear) out << (cache.clear() ? "removed " : "no cache at ") << cache.path().string() << '\n';
      return exit_ok;
    }

    if (*registry_cmd) {
      out << registry_to_json(s.registry()).dump(2) << '\n';
      return exit_ok;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace tcore::cli
