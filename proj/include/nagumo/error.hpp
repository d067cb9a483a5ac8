#ifndef NAGUMO_ERROR_HPP
#define NAGUMO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nagumo {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  SingularMatrix,
  NoConvergence,
  NotPositiveDefinite,
  BadBracket,
  EmptyBoundary,
  EmptySet,
  NotMember,
  IndexOutOfRange,
  ApexPoint,
  NumericalFailure,
  IterationLimit,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// True for failures of the numerical machinery itself, as opposed to bad input.
bool is_numerical_failure(ErrorCode code);

}  // namespace nagumo

#endif  // NAGUMO_ERROR_HPP
