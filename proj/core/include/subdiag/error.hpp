#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subdiag {

enum class ErrorCode {
  NotHermitian,
  NotPositiveDefinite,
  InvalidPartition,
  DimensionMismatch,
  InvalidMatrix,
  InvalidState,
  NotInAlgebra,
  NotInvertibleInAlgebra,
  SingularDensity,
  NonConvergence,
  DimensionTooLarge,
  InvalidGrid,
  NonpositiveSample,
  ZeroPolynomial,
  IllConditionedNormalEquations,
  ParseError,
  ValidationError,
};

inline std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotInvertibleInAlgebra: return "NotInvertibleInAlgebra";
    case ErrorCode::SingularDensity: return "SingularDensity";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::NonpositiveSample: return "NonpositiveSample";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::IllConditionedNormalEquations: return "IllConditionedNormalEquations";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace subdiag
