#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosetlfun {

enum class errc {
  not_invertible,
  invalid_modulus,
  not_one_unit,
  degenerate_conductor,
  shared_factor,
  unsupported_regime,
  precondition_violated,
  odd_base,
  regime_mismatch,
  pole_at_one,
  principal_character,
  odd_character,
  not_primitive,
  bad_shift_bound,
  quadrature_too_coarse,
  config_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::not_invertible: return "NotInvertible";
    case errc::invalid_modulus: return "InvalidModulus";
    case errc::not_one_unit: return "NotOneUnit";
    case errc::degenerate_conductor: return "DegenerateConductor";
    case errc::shared_factor: return "SharedFactor";
    case errc::unsupported_regime: return "UnsupportedRegime";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::odd_base: return "OddBase";
    case errc::regime_mismatch: return "RegimeMismatch";
    case errc::pole_at_one: return "PoleAtOne";
    case errc::principal_character: return "PrincipalCharacter";
    case errc::odd_character: return "OddCharacter";
    case errc::not_primitive: return "NotPrimitive";
    case errc::bad_shift_bound: return "BadShiftBound";
    case errc::quadrature_too_coarse: return "QuadratureTooCoarse";
    case errc::config_error: return "ConfigError";
  }
  return "Unknown";
}

// All library failures are reported through this type; code() identifies the
// violated contract.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace cosetlfun
