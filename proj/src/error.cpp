#include "nagumo/error.hpp"

namespace nagumo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::BadBracket: return "BadBracket";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ApexPoint: return "ApexPoint";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NoConvergence:
    case ErrorCode::NumericalFailure:
    case ErrorCode::IterationLimit:
      return true;
    default:
      return false;
  }
}

}  // namespace nagumo
