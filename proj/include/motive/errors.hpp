#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motive {

/// Named failure modes. Each maps to one diagnostic name in CLI output.
enum class ErrorKind {
  ResidualDenominator,
  ZeroConstantTerm,
  NotInvertible,
  PoleAtPoint,
  PoleAtUnit,
  UnsupportedTailExponent,
  NonIntegralExponent,
  InvalidPartitionShape,
  OddnessViolation,
  RegimeViolation,
  ParityViolation,
  UnsupportedRank,
  UnboundedEnumeration,
  FormMismatch,
  PrefactorUnresolvable,
  InvariantViolation,
  InvalidArgument,
};

/// Stable identifier of an error kind, e.g. "ResidualDenominator".
std::string_view error_name(ErrorKind kind);

/// Exception carrying an ErrorKind plus a human readable detail string.
class MotiveError : public std::runtime_error {
 public:
  MotiveError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// True for kinds that indicate a broken internal identity rather than bad input.
bool is_invariant_violation(ErrorKind kind);

}  // namespace motive
