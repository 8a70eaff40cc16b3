#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycleforge {

enum class ErrorCode {
  InvalidArgument,
  // numerics
  InvalidBracket,
  NoSignChange,
  TooFewSamples,
  NonMonotoneGrid,
  // sdf
  UnknownYear,
  EmptyPillar,
  MissingValue,
  // interpolation
  DuplicateNodes,
  DegreeCapExceeded,
  OutOfDomain,
  // periodic / cycle
  BeforeBase,
  BadRange,
  // logistic
  InvalidModel,
  Unreachable,
  FracOutOfRange,
  NotAfterStart,
  NonPositiveData,
  NoConvergence,
  // cli
  IoError,
  ParseError,
  SchemaError,
  ValidationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cycleforge
