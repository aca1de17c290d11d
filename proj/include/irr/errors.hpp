#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace irr {

enum class ErrorKind {
  InvalidInput,
  VariableMismatch,
  ZeroPolynomial,
  PoleOnPath,
  NoRecurrenceFound,
  NeverVanishes,
  SingularLeadingCoefficient,
  ComplexRootsPresent,
  ModulusTie,
  UnsupportedDenominator,
  ExactHit,
  InsufficientPrecision,
  NoRuleFound,
  NonpositiveDelta,
  ConditionViolated,
  CongruenceViolated,
  ReconstructionFailed,
  InternalCheckFailed,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::PoleOnPath: return "PoleOnPath";
    case ErrorKind::NoRecurrenceFound: return "NoRecurrenceFound";
    case ErrorKind::NeverVanishes: return "NeverVanishes";
    case ErrorKind::SingularLeadingCoefficient: return "SingularLeadingCoefficient";
    case ErrorKind::ComplexRootsPresent: return "ComplexRootsPresent";
    case ErrorKind::ModulusTie: return "ModulusTie";
    case ErrorKind::UnsupportedDenominator: return "UnsupportedDenominator";
    case ErrorKind::ExactHit: return "ExactHit";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NoRuleFound: return "NoRuleFound";
    case ErrorKind::NonpositiveDelta: return "NonpositiveDelta";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::CongruenceViolated: return "CongruenceViolated";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

/// Process exit code for the CLI:
/// 0 ok, 1 no positive delta, 2 invalid input, 3 internal check failure
/// (certificate or precision), 4 search exhausted (no recurrence / rule /
/// reconstruction within the configured budget).
constexpr int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonpositiveDelta: return 1;
    case ErrorKind::InvalidInput:
    case ErrorKind::VariableMismatch:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::PoleOnPath:
    case ErrorKind::NeverVanishes:
    case ErrorKind::SingularLeadingCoefficient:
    case ErrorKind::ComplexRootsPresent:
    case ErrorKind::ModulusTie:
    case ErrorKind::UnsupportedDenominator:
    case ErrorKind::ConditionViolated:
    case ErrorKind::CongruenceViolated:
      return 2;
    case ErrorKind::ExactHit:
    case ErrorKind::InsufficientPrecision:
    case ErrorKind::InternalCheckFailed:
      return 3;
    case ErrorKind::NoRecurrenceFound:
    case ErrorKind::NoRuleFound:
    case ErrorKind::ReconstructionFailed:
      return 4;
  }
  return 3;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::int64_t detail = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Kind-specific payload: required bits for InsufficientPrecision, the
  // offending n for SingularLeadingCoefficient, the order for
  // NoRecurrenceFound.
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::int64_t detail_;
};

}  // namespace irr
