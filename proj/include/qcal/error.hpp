#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcal {

enum class ErrorCode {
  // linalg
  NonHermitian,
  NoConvergence,
  DimensionMismatch,
  // models
  GridTooSmall,
  NonMonotoneGrid,
  OutOfRange,
  InvalidParameter,
  // thermal
  NonPositiveTemperature,
  NoZeemanTerm,
  EmptyPath,
  // caloric
  QuadratureNoConvergence,
  DegenerateVariance,
  OdeNoConvergence,
  BracketFailure,
  ZeroTotalHeat,
  // discord
  AnisotropicState,
  NegativeSusceptibility,
  SignCrossing,
  // io
  SyntaxError,
  ValidationError,
  UnknownKey,
  HeaderMismatch,
  NonMonotonePressure,
  ParseError,
  IoError,
  TooFewPoints,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. `field` names the
/// offending input (scenario key, CSV row, grid coordinate) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::NoZeemanTerm: return "NoZeemanTerm";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::OdeNoConvergence: return "OdeNoConvergence";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::ZeroTotalHeat: return "ZeroTotalHeat";
    case ErrorCode::AnisotropicState: return "AnisotropicState";
    case ErrorCode::NegativeSusceptibility: return "NegativeSusceptibility";
    case ErrorCode::SignCrossing: return "SignCrossing";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::NonMonotonePressure: return "NonMonotonePressure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
  }
  return "Unknown";
}

}  // namespace qcal
