#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "sentinel/bazin/prior.hpp"
#include "sentinel/bazin/sampler.hpp"
#include "sentinel/prediction.hpp"
#include "sentinel/rng.hpp"

namespace sentinel::bazin {

/// Posterior-predictive flux at target_time: each draw contributes
/// F = f(target_time) + A * sigma_int * eps, eps ~ N(0, 1); the prediction is the
/// sample mean and (population) standard deviation of F. Throws kEmptySamples.
Prediction predict(const PosteriorSamples& samples, double target_time, Passband band, Rng& rng);

struct BazinPredictorOptions {
  SamplerConfig sampler;
  std::size_t prior_draws = 1000;  // prior-predictive draws below the data threshold
  std::uint64_t seed = 0;
};

/// Bayesian Bazin forecaster for one trained class.
///
/// With fewer than `sampler.min_observations` points in the passband it falls
/// back to the prior predictive. Randomness is keyed by (seed, transient, band,
/// horizon), so results do not depend on call order or thread.
class BazinPredictor final : public Predictor {
 public:
  BazinPredictor(ClassPrior prior, BazinPredictorOptions options);

  std::string model_class() const override { return prior_.class_name; }
  Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const override;

  const ClassPrior& prior() const { return prior_; }

 private:
  ClassPrior prior_;
  BazinPredictorOptions options_;
};

}  // namespace sentinel::bazin
