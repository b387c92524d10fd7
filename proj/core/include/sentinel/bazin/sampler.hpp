#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sentinel/bazin/fit.hpp"
#include "sentinel/bazin/params.hpp"
#include "sentinel/bazin/prior.hpp"
#include "sentinel/lightcurve.hpp"
#include "sentinel/rng.hpp"

namespace sentinel::bazin {

struct SamplerConfig {
  std::size_t n_chains = 4;
  std::size_t n_draws = 1000;  // retained draws, summed over chains
  std::size_t burn_in = 500;   // iterations per chain, proposal adapted here then frozen
  std::size_t thin = 1;
  std::size_t min_observations = 3;  // 0 allows prior-only sampling
  std::size_t adapt_windows = 5;     // covariance re-estimates during burn-in
  double target_acceptance = 0.234;
  double init_jitter = 1.0;          // chain starts: MAP + jitter * (approximate posterior sd)
  bool compute_ess = true;

  // Parameters held fixed at their starting value when false.
  std::array<bool, kNumParams> free{true, true, true, true, true, true};
  // Explicit starting point (transformed); otherwise MAP when data allow, else prior mean.
  std::optional<Vector6> init;

  FitOptions map;
};

struct SamplerDiagnostics {
  double acceptance_rate = 0.0;
  std::array<double, kNumParams> rhat{};  // split-chain, transformed space; 1 for fixed parameters
  std::array<double, kNumParams> ess{};   // bulk effective sample size
  bool converged = true;                  // every rhat <= 1.1
  std::size_t n_chains = 0;
  std::size_t draws_per_chain = 0;
};

struct PosteriorSamples {
  Passband band = Passband::g;
  std::vector<BazinParams> draws;
  std::vector<Vector6> transformed;
  std::vector<double> log_posterior;
  std::vector<std::size_t> chain;
  SamplerDiagnostics diagnostics;

  std::size_t size() const { return draws.size(); }
  bool empty() const { return draws.empty(); }
};

/// Adaptive random-walk Metropolis over the transformed parameters.
///
/// Chains start around the MAP point (or `cfg.init`), use a Laplace estimate of the
/// posterior covariance as the first proposal, adapt scale and covariance during
/// burn-in, and run with a frozen proposal afterwards. Non-convergence (R-hat > 1.1)
/// is reported in the diagnostics, not thrown. Throws kInsufficientData.
PosteriorSamples sample_posterior(const BandSeries& data, const GaussianPrior& prior, const SamplerConfig& cfg,
                                  Rng& rng);

PosteriorSamples sample_posterior(const PartialLightCurve& plc, const ClassPrior& prior, Passband band,
                                  const SamplerConfig& cfg, Rng& rng);

/// Independent draws from the prior (sigma_int floor enforced by rejection).
PosteriorSamples sample_prior(const GaussianPrior& prior, Passband band, std::size_t n, Rng& rng);

/// Split-chain potential scale reduction for equally long chains.
double split_rhat(const std::vector<std::vector<double>>& chains);

/// Multi-chain effective sample size with Geyer's initial monotone sequence.
double effective_sample_size(const std::vector<std::vector<double>>& chains);

/// One row per draw: chain,A,B,t0,tau_fall,tau_rise,sigma_int,log_posterior.
std::string samples_to_csv(const PosteriorSamples& samples);

}  // namespace sentinel::bazin
