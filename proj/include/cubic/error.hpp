#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubic {

enum class ErrorCode {
  NonPositiveRadicand,
  FieldTooLarge,
  DivisionByZero,
  ParseError,
  VariableMismatch,
  DimensionMismatch,
  NotLinear,
  IdenticalIndices,
  NotInGeneralPosition,
  DegenerateLinearSystem,
  PlaneCountMismatch,
  LineCountMismatch,
  LinesAtInfinity,
  NonPositiveExtent,
  InvalidShellSpec,
  EmptyMesh,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveRadicand: return "NonPositiveRadicand";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::IdenticalIndices: return "IdenticalIndices";
    case ErrorCode::NotInGeneralPosition: return "NotInGeneralPosition";
    case ErrorCode::DegenerateLinearSystem: return "DegenerateLinearSystem";
    case ErrorCode::PlaneCountMismatch: return "PlaneCountMismatch";
    case ErrorCode::LineCountMismatch: return "LineCountMismatch";
    case ErrorCode::LinesAtInfinity: return "LinesAtInfinity";
    case ErrorCode::NonPositiveExtent: return "NonPositiveExtent";
    case ErrorCode::InvalidShellSpec: return "InvalidShellSpec";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace cubic
