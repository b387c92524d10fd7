#include "sentinel/bazin/predict.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "sentinel/bazin/function.hpp"
#include "sentinel/error.hpp"

namespace sentinel::bazin {

Prediction predict(const PosteriorSamples& samples, double target_time, Passband band, Rng& rng) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySamples, "no posterior draws to predict from");
  std::normal_distribution<double> normal;
  const auto n = static_cast<double>(samples.size());

  std::vector<double> fluxes;
  fluxes.reserve(samples.size());
  for (const auto& p : samples.draws) {
    fluxes.push_back(bazin_flux(p, target_time) + p.amplitude * p.sigma_int * normal(rng));
  }
  double mean = 0.0;
  for (double f : fluxes) mean += f;
  mean /= n;
  double var = 0.0;
  for (double f : fluxes) var += (f - mean) * (f - mean);
  var /= n;

  Prediction pred;
  pred.target_time = target_time;
  pred.passband = band;
  pred.y = mean;
  pred.sigma_y = std::max(std::sqrt(var), kSigmaYFloor);
  pred.n_samples_used = samples.size();
  if (!std::isfinite(pred.y) || !std::isfinite(pred.sigma_y)) {
    throw Error(ErrorCode::kModelFailure, "non-finite predictive moments");
  }
  return pred;
}

}  // namespace sentinel::bazin
