#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaplight {

enum class ErrorKind {
  InvalidParameter,
  MinimumSeparationViolated,
  DegenerateInitialState,
  NonpositiveGamma,
  StepSizeTooLarge,
  HistoryUnderflow,
  NoFixedPointInGainRegime,
  EmptySeries,
  NotStationary,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Configuration problems map to exit status 2, numerical failures to 3.
bool is_config_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gaplight
