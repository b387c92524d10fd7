#pragma once

#include <cstddef>
#include <string>

#include "sentinel/bazin/fit.hpp"
#include "sentinel/bazin/prior.hpp"
#include "sentinel/lightcurve.hpp"

namespace sentinel::bazin {

struct PriorBuildOptions {
  std::size_t min_curves = 20;
  double max_failure_rate = 0.30;
  double cov_regularization = 1e-6;  // added to the covariance diagonal
  ClassPrior hyper_prior = broad_hyper_prior();
  FitOptions fit;
};

struct PriorBuildReport {
  std::size_t n_curves = 0;
  std::size_t n_fits = 0;      // curves x passbands
  std::size_t n_failures = 0;

  double failure_rate() const { return n_fits == 0 ? 0.0 : static_cast<double>(n_failures) / n_fits; }
};

/// Class prior from a training population: point-fit every curve and passband
/// under the broad hyper-prior, then take the sample mean and covariance of
/// the fitted transformed parameters per passband.
///
/// Throws kTooFewCurves and kFitFailureRateExceeded.
ClassPrior build_class_prior(const Dataset& train, const std::string& class_name,
                             const PriorBuildOptions& options = {}, PriorBuildReport* report = nullptr);

}  // namespace sentinel::bazin
