#include "gaplight/errors.hpp"

namespace gaplight {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::MinimumSeparationViolated: return "MinimumSeparationViolated";
    case ErrorKind::DegenerateInitialState: return "DegenerateInitialState";
    case ErrorKind::NonpositiveGamma: return "NonpositiveGamma";
    case ErrorKind::StepSizeTooLarge: return "StepSizeTooLarge";
    case ErrorKind::HistoryUnderflow: return "HistoryUnderflow";
    case ErrorKind::NoFixedPointInGainRegime: return "NoFixedPointInGainRegime";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::NotStationary: return "NotStationary";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_config_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::MinimumSeparationViolated:
    case ErrorKind::DegenerateInitialState:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return true;
    default:
      return false;
  }
}

}  // namespace gaplight
