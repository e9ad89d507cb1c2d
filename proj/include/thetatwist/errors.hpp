#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thetatwist {

enum class ErrorCode {
  NotInvertible,
  NotPrime,
  ResourceLimit,
  BadLeadingCoefficient,
  OutOfRange,
  DegenerateGrid,
  NonpositiveMagnitude,
  TrivialCharacter,
  ModuliNotCoprime,
  BadDelta,
  TableTooShort,
  QuadratureFailure,
  ContourOutOfRange,
  TruncationTooSmall,
  BadParameters,
  HypothesisViolated,
  Config,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::BadLeadingCoefficient: return "BadLeadingCoefficient";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::NonpositiveMagnitude: return "NonpositiveMagnitude";
    case ErrorCode::TrivialCharacter: return "TrivialCharacter";
    case ErrorCode::ModuliNotCoprime: return "ModuliNotCoprime";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::TableTooShort: return "TableTooShort";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ContourOutOfRange: return "ContourOutOfRange";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thetatwist
