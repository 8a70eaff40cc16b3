#include "cycleforge/error.hpp"

namespace cycleforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidBracket: return "InvalidBracket";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
    case ErrorCode::UnknownYear: return "UnknownYear";
    case ErrorCode::EmptyPillar: return "EmptyPillar";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::DuplicateNodes: return "DuplicateNodes";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BeforeBase: return "BeforeBase";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::FracOutOfRange: return "FracOutOfRange";
    case ErrorCode::NotAfterStart: return "NotAfterStart";
    case ErrorCode::NonPositiveData: return "NonPositiveData";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) noexcept {
  return code == ErrorCode::NoConvergence || code == ErrorCode::Unreachable;
}

}  // namespace cycleforge
