#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentinel {

enum class ErrorCode {
  kMissingColumn,
  kNonPositiveFluxError,
  kUnknownPassband,
  kTimeOutOfRange,
  kDuplicateObservation,
  kInvalidLightCurve,
  kParseError,
  kHorizonOutOfRange,
  kIoError,
  kInvalidTemplate,
  kRejectionBudgetExceeded,
  kEmptyAfterDropout,
  kInvalidParams,
  kInsufficientData,
  kTooFewCurves,
  kFitFailureRateExceeded,
  kConvergenceFailure,
  kInvalidPrior,
  kEmptySamples,
  kTimeMismatch,
  kPassbandMismatch,
  kModelFailure,
  kEmptyInput,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sentinel
