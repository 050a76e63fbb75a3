#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcore {

enum class errc {
  non_unit_constant_term,
  fractional_prefactor,
  negative_prefactor,
  even_modulus,
  zero_input,
  unsupported_pair,
  budget_exceeded,
  non_integral_result,
  unknown_form,
  unknown_character,
  parse_error,
  invalid_argument,
};

inline constexpr std::string_view errc_name(errc c) noexcept {
  switch (c) {
    case errc::non_unit_constant_term: return "NonUnitConstantTerm";
    case errc::fractional_prefactor: return "FractionalPrefactor";
    case errc::negative_prefactor: return "NegativePrefactor";
    case errc::even_modulus: return "EvenModulus";
    case errc::zero_input: return "ZeroInput";
    case errc::unsupported_pair: return "UnsupportedPair";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::non_integral_result: return "NonIntegralResult";
    case errc::unknown_form: return "UnknownForm";
    case errc::unknown_character: return "UnknownCharacter";
    case errc::parse_error: return "ParseError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the `errc` codes so
/// callers (tests, the CLI's exit-code mapping) can branch on the kind.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace tcore
