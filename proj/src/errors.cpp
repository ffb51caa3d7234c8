#include "motive/errors.hpp"

namespace motive {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResidualDenominator: return "ResidualDenominator";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::PoleAtUnit: return "PoleAtUnit";
    case ErrorKind::UnsupportedTailExponent: return "UnsupportedTailExponent";
    case ErrorKind::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorKind::InvalidPartitionShape: return "InvalidPartitionShape";
    case ErrorKind::OddnessViolation: return "OddnessViolation";
    case ErrorKind::RegimeViolation: return "RegimeViolation";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::UnboundedEnumeration: return "UnboundedEnumeration";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::PrefactorUnresolvable: return "PrefactorUnresolvable";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_invariant_violation(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FormMismatch:
    case ErrorKind::PrefactorUnresolvable:
    case ErrorKind::NonIntegralExponent:
    case ErrorKind::ResidualDenominator:
    case ErrorKind::InvariantViolation:
      return true;
    default:
      return false;
  }
}

}  // namespace motive
