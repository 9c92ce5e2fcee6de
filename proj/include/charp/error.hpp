#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charp {

enum class ErrorKind {
  NotPrime,
  SyntaxError,
  UnknownVariable,
  ExponentOverflow,
  TooManyVariables,
  DivisionByZero,
  ResourceBudgetExceeded,
  NotAPowerOfP,
  NotPrimary,
  UnitIdeal,
  ZeroIdeal,
  NotStabilized,
  PointNotOnVariety,
  NotEquidimensional,
  InvalidArgument,
  ParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the engine carries a machine-readable kind so the
/// job runner can embed it in reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace charp
