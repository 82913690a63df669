#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridshock {

enum class ErrorCode {
  InvalidParameter,
  EmptyInput,
  OutOfRange,
  MalformedRow,
  NegativeSpeed,
  IncompleteGrid,
  DuplicateEntry,
  UnknownTract,
  CannotConnect,
  TractMismatch,
  UnknownStrategy,
  InfeasibleTask,
  ArityMismatch,
  NonIncreasingIntercepts,
  EmptyPopulation,
  UndefinedGroup,
  UnknownBaseline,
  MismatchedPopulation,
  UnknownFormat,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridshock
