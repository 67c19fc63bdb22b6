#include "seisdetect/error.hpp"

namespace seisdetect {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::UnknownFeature: return "UnknownFeature";
    case ErrorCode::DuplicateFeature: return "DuplicateFeature";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::MissingParams: return "MissingParams";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooFewEvents: return "TooFewEvents";
    case ErrorCode::InsufficientNoise: return "InsufficientNoise";
    case ErrorCode::IngestError: return "IngestError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RoleViolation: return "RoleViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace seisdetect
