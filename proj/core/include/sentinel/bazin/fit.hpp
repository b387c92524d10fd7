#pragma once

#include <cstddef>
#include <cstdint>

#include "sentinel/bazin/likelihood.hpp"
#include "sentinel/bazin/prior.hpp"

namespace sentinel::bazin {

/// Unnormalised log posterior over the transformed parameter vector. Returns
/// -inf below the sigma_int floor or when the likelihood is not finite.
class LogPosterior {
 public:
  LogPosterior(const BandSeries& data, const GaussianPrior& prior) : data_(&data), prior_(&prior) {}

  double operator()(const Vector6& x) const;
  double log_prior(const Vector6& x) const { return prior_->log_density(x); }

  const BandSeries& data() const { return *data_; }
  const GaussianPrior& prior() const { return *prior_; }

 private:
  const BandSeries* data_;
  const GaussianPrior* prior_;
};

struct FitOptions {
  std::size_t min_observations = 3;
  std::size_t n_random_starts = 4;  // prior draws in addition to the prior mean
  bool data_driven_start = true;    // also start from a peak-based guess
  std::size_t max_evaluations = 2500;
  std::uint64_t seed = 0;           // stream for the random starts
};

struct MapResult {
  Vector6 transformed;
  BazinParams params;
  double log_posterior = 0.0;
  std::size_t evaluations = 0;
  std::size_t successful_starts = 0;
};

/// Multi-start Nelder-Mead maximisation of the log posterior in transformed
/// space. Throws kInsufficientData or kConvergenceFailure.
MapResult fit_map(const BandSeries& data, const GaussianPrior& prior, const FitOptions& options = {});

BazinParams fit_map(const PartialLightCurve& plc, const ClassPrior& prior, Passband band,
                    const FitOptions& options = {});

}  // namespace sentinel::bazin
