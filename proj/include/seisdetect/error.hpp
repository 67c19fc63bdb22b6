#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seisdetect {

enum class ErrorCode {
  DegenerateInput,
  InvalidBand,
  InvalidFactor,
  InvalidConfig,
  DegenerateSeries,
  UnknownFeature,
  DuplicateFeature,
  ZeroVariance,
  MissingParams,
  MissingFeature,
  DegenerateLabels,
  ShapeMismatch,
  TooFewEvents,
  InsufficientNoise,
  IngestError,
  ParseError,
  RoleViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` lets callers
// branch on the failure class without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix, for re-wrapping with context.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace seisdetect
