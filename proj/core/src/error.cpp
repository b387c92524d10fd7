#include "sentinel/error.hpp"

namespace sentinel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kNonPositiveFluxError: return "NonPositiveFluxError";
    case ErrorCode::kUnknownPassband: return "UnknownPassband";
    case ErrorCode::kTimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::kDuplicateObservation: return "DuplicateObservation";
    case ErrorCode::kInvalidLightCurve: return "InvalidLightCurve";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kHorizonOutOfRange: return "HorizonOutOfRange";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidTemplate: return "InvalidTemplate";
    case ErrorCode::kRejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::kEmptyAfterDropout: return "EmptyAfterDropout";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kTooFewCurves: return "TooFewCurves";
    case ErrorCode::kFitFailureRateExceeded: return "FitFailureRateExceeded";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kInvalidPrior: return "InvalidPrior";
    case ErrorCode::kEmptySamples: return "EmptySamples";
    case ErrorCode::kTimeMismatch: return "TimeMismatch";
    case ErrorCode::kPassbandMismatch: return "PassbandMismatch";
    case ErrorCode::kModelFailure: return "ModelFailure";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace sentinel
