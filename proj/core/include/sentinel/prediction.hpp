#pragma once

#include <cstddef>
#include <string>

#include "sentinel/lightcurve.hpp"

namespace sentinel {

// Numerical floor for a predictive standard deviation.
inline constexpr double kSigmaYFloor = 1e-9;

/// Marginal predictive distribution of the flux in one passband at one time.
struct Prediction {
  double target_time = 0.0;
  Passband passband = Passband::g;
  double y = 0.0;        // predictive mean
  double sigma_y = 1.0;  // predictive std, > 0
  std::size_t n_samples_used = 0;
};

/// Anything that forecasts a future flux from a causal slice of a light curve.
///
/// Implementations must be safe to call concurrently from several scorers.
/// Failures are reported by throwing sentinel::Error.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual std::string model_class() const = 0;
  virtual Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const = 0;
};

}  // namespace sentinel
