#pragma once

#include <cstdint>
#include <istream>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcore/arith.hpp"
#include "tcore/bigint.hpp"
#include "tcore/error.hpp"
#include "tcore/formulas.hpp"

namespace tcore {

/// Integers up to 2^53 - 1 in magnitude become JSON numbers; anything
/// larger is written as a decimal string so consumers never lose digits.
inline nlohmann::json json_integer(const BigInt& v) {
  static const BigInt limit("9007199254740991");
  if (abs(v) <= limit) return v.get_si();
  return to_string(v);
}

inline BigInt integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  throw error(errc::parse_error, "expected an integer, got " + j.dump());
}

inline std::string eisenstein_name(const EisensteinTerm& e) {
  switch (e.kind) {
    case EisensteinKind::sigma: return "sigma(" + std::to_string(e.j) + ")";
    case EisensteinKind::twisted_divisor:
      return "sigma_d(" + std::to_string(e.j) + "," + character_for_modulus(e.param).name() + ")";
    case EisensteinKind::twisted_codivisor:
      return "sigma_q(" + std::to_string(e.j) + "," + character_for_modulus(e.param).name() + ")";
    case EisensteinKind::sharp: return "sigma_sharp(" + std::to_string(e.param) + "," + std::to_string(e.j) + ")";
  }
  return "?";
}

/// Inverse of `eisenstein_name`.
inline EisensteinTerm parse_eisenstein(const std::string& name) {
  static const std::regex plain(R"(sigma\((\d+)\))");
  static const std::regex twisted(R"(sigma_([dq])\((\d+),(chi[0-9_]+)\))");
  static const std::regex sharp(R"(sigma_sharp\((\d+),(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, plain)) {
    return {EisensteinKind::sigma, static_cast<unsigned>(std::stoul(m[1])), 0};
  }
  if (std::regex_match(name, m, twisted)) {
    for (unsigned modulus : {3U, 4U, 5U, 7U}) {
      if (character_for_modulus(modulus).name() == m[3]) {
        return {m[1] == "d" ? EisensteinKind::twisted_divisor : EisensteinKind::twisted_codivisor,
                static_cast<unsigned>(std::stoul(m[2])), modulus};
      }
    }
    throw error(errc::unknown_character, "unknown character '" + m[3].str() + "'");
  }
  if (std::regex_match(name, m, sharp)) {
    return {EisensteinKind::sharp, static_cast<unsigned>(std::stoul(m[2])), static_cast<unsigned>(std::stoul(m[1]))};
  }
  throw error(errc::parse_error, "unrecognized Eisenstein function '" + name + "'");
}

inline nlohmann::json to_json(const FormulaSpec& f) {
  return {
      {"id", f.id},
      {"t", f.t},
      {"k", f.k},
      {"index", {{"scale", f.index.scale}, {"offset", f.index.offset}}},
      {"eisenstein", eisenstein_name(f.eisenstein)},
      {"cusp", f.cusp ? nlohmann::json(*f.cusp) : nlohmann::json(nullptr)},
      {"divisor", f.divisor},
      {"level", f.level},
      {"weight", f.weight},
      {"nebentypus", f.nebentypus},
  };
}

inline FormulaSpec formula_from_json(const nlohmann::json& j) {
  try {
    FormulaSpec f;
    f.t = j.at("t").get<std::uint32_t>();
    f.k = j.at("k").get<std::uint32_t>();
    f.id = j.contains("id") ? j.at("id").get<std::string>() : theorem_id(f.t, f.k);
    f.index.scale = j.at("index").at("scale").get<std::uint64_t>();
    f.index.offset = j.at("index").at("offset").get<std::uint64_t>();
    f.eisenstein = parse_eisenstein(j.at("eisenstein").get<std::string>());
    if (j.contains("cusp") && !j.at("cusp").is_null()) {
      f.cusp = j.at("cusp").get<std::string>();
      find_named_form(*f.cusp);
    }
    f.divisor = j.at("divisor").get<std::uint64_t>();
    f.level = j.at("level").get<std::uint32_t>();
    f.weight = j.at("weight").get<std::uint32_t>();
    f.nebentypus = j.value("nebentypus", "");
    if (f.t < 2 || f.k < 1 || f.index.scale < 1 || f.divisor < 1 || f.level < 1 || f.weight < 1) {
      throw error(errc::parse_error, "registry entry " + f.id + " has out-of-range fields");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("malformed registry entry: ") + e.what());
  }
}

/// The registry as a JSON array, one object per theorem.
inline nlohmann::json registry_to_json(std::span<const FormulaSpec> registry) {
  auto out = nlohmann::json::array();
  for (const auto& f : registry) out.push_back(to_json(f));
  return out;
}

inline std::vector<FormulaSpec> registry_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw error(errc::parse_error, "registry manifest must be a JSON array");
  std::vector<FormulaSpec> out;
  for (const auto& entry : j) out.push_back(formula_from_json(entry));
  return out;
}

inline std::vector<FormulaSpec> read_registry(std::istream& in) {
  try {
    return registry_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, std::string("registry manifest: ") + e.what());
  }
}

}  // namespace tcore
