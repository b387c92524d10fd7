#include "sentinel/bazin/population.hpp"

#include <cmath>
#include <vector>

#include "sentinel/error.hpp"
#include "sentinel/rng.hpp"

namespace sentinel::bazin {

ClassPrior build_class_prior(const Dataset& train, const std::string& class_name, const PriorBuildOptions& options,
                             PriorBuildReport* report) {
  const auto curves = train.of_class(class_name);
  if (curves.size() < options.min_curves) {
    throw Error(ErrorCode::kTooFewCurves, "class '" + class_name + "' has " + std::to_string(curves.size()) +
                                              " training curves, need " + std::to_string(options.min_curves));
  }

  PriorBuildReport local;
  local.n_curves = curves.size();
  std::array<std::vector<Vector6>, kNumPassbands> fitted;
  for (const LightCurve* lc : curves) {
    const auto full = slice_until(*lc, kWindowEnd);
    for (Passband band : kPassbands) {
      ++local.n_fits;
      FitOptions fit = options.fit;
      fit.seed = fnv1a(lc->transient_id()) ^ options.fit.seed;
      try {
        const auto result = fit_map(BandSeries::from(full, band), options.hyper_prior.band(band), fit);
        fitted[index_of(band)].push_back(result.transformed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInsufficientData && e.code() != ErrorCode::kConvergenceFailure) throw;
        ++local.n_failures;
      }
    }
  }
  if (report != nullptr) *report = local;
  if (local.failure_rate() > options.max_failure_rate) {
    throw Error(ErrorCode::kFitFailureRateExceeded,
                "class '" + class_name + "': " + std::to_string(local.n_failures) + " of " +
                    std::to_string(local.n_fits) + " point fits failed");
  }

  ClassPrior prior;
  prior.class_name = class_name;
  for (Passband band : kPassbands) {
    const auto& xs = fitted[index_of(band)];
    if (xs.size() < 2) {
      throw Error(ErrorCode::kFitFailureRateExceeded,
                  "class '" + class_name + "': too few successful fits in passband " + std::string(to_string(band)));
    }
    Vector6 mean = Vector6::Zero();
    for (const auto& x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    Matrix6 cov = Matrix6::Zero();
    for (const auto& x : xs) cov += (x - mean) * (x - mean).transpose();
    cov /= static_cast<double>(xs.size() - 1);
    cov = 0.5 * (cov + cov.transpose()).eval();
    cov.diagonal().array() += options.cov_regularization;
    prior.bands[index_of(band)] = GaussianPrior(mean, cov);
  }
  return prior;
}

}  // namespace sentinel::bazin
