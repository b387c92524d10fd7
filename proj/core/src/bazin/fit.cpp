#include "sentinel/bazin/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sentinel/error.hpp"
#include "sentinel/nelder_mead.hpp"

namespace sentinel::bazin {
namespace {

const double kLogSigmaFloor = std::log(kSigmaIntFloor);

// Pull a start inside the support (sigma_int above its floor).
Vector6 admissible(Vector6 x) {
  x[kLogSigmaInt] = std::max(x[kLogSigmaInt], kLogSigmaFloor + 0.5);
  return x;
}

Vector6 peak_guess(const BandSeries& data, const GaussianPrior& prior) {
  Vector6 x = prior.mean();
  std::vector<double> sorted = data.flux;
  std::sort(sorted.begin(), sorted.end());
  const double baseline = sorted[sorted.size() / 5];
  const auto peak = std::max_element(data.flux.begin(), data.flux.end());
  const double t_peak = data.time[static_cast<std::size_t>(peak - data.flux.begin())];
  const double tau_fall = std::exp(x[kLogTauFall]);
  const double tau_rise = std::exp(x[kLogTauRise]);
  // A Bazin curve with tau_fall ~ 6 tau_rise peaks at roughly 0.6 A.
  const double amplitude = std::max((*peak - baseline) / 0.6, 1e-3 * std::exp(x[kLogAmplitude]));
  x[kLogAmplitude] = std::log(amplitude);
  x[kBaseline] = baseline;
  x[kT0] = tau_fall > 2.0 * tau_rise ? t_peak - tau_rise * std::log(tau_fall / tau_rise - 1.0) : t_peak;
  return x;
}

Vector6 initial_step(const GaussianPrior& prior) {
  Vector6 step;
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double sd = std::sqrt(prior.cov()(i, i));
    step[i] = std::clamp(0.5 * sd, 1e-6, i == kBaseline || i == kT0 ? 5.0 : 0.5);
  }
  return step;
}

}  // namespace

double LogPosterior::operator()(const Vector6& x) const {
  if (!(x[kLogSigmaInt] >= kLogSigmaFloor) || !x.allFinite()) return -std::numeric_limits<double>::infinity();
  const BazinParams p = to_natural(x);
  if (!p.valid()) return -std::numeric_limits<double>::infinity();
  const double value = log_likelihood(p, *data_) + prior_->log_density(x);
  return std::isfinite(value) ? value : -std::numeric_limits<double>::infinity();
}

MapResult fit_map(const BandSeries& data, const GaussianPrior& prior, const FitOptions& options) {
  if (data.size() < options.min_observations) {
    throw Error(ErrorCode::kInsufficientData, "need at least " + std::to_string(options.min_observations) +
                                                  " observations in passband " +
                                                  std::string(to_string(data.band)) + ", have " +
                                                  std::to_string(data.size()));
  }
  const LogPosterior log_post(data, prior);

  std::vector<Vector6> starts{admissible(prior.mean())};
  Rng rng = make_stream(options.seed, "fit_map", index_of(data.band), data.size());
  for (std::size_t i = 0; i < options.n_random_starts; ++i) starts.push_back(admissible(prior.draw(rng)));
  if (options.data_driven_start && !data.empty()) starts.push_back(admissible(peak_guess(data, prior)));

  const auto objective = [&](const Eigen::VectorXd& x) { return -log_post(Vector6(x)); };
  const Vector6 step = initial_step(prior);
  optim::NelderMeadOptions nm;
  nm.max_evaluations = options.max_evaluations;

  MapResult best;
  best.log_posterior = -std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    auto run = optim::minimize(objective, start, step, nm);
    best.evaluations += run.evaluations;
    if (!std::isfinite(run.value)) continue;
    // one restart around the optimum guards against a collapsed simplex
    auto again = optim::minimize(objective, run.x, 0.2 * step, nm);
    best.evaluations += again.evaluations;
    if (again.value < run.value) run = std::move(again);
    ++best.successful_starts;
    if (-run.value > best.log_posterior) {
      best.log_posterior = -run.value;
      best.transformed = Vector6(run.x);
    }
  }
  if (best.successful_starts == 0) {
    throw Error(ErrorCode::kConvergenceFailure, "no start reached a finite posterior value");
  }
  best.params = to_natural(best.transformed);
  return best;
}

BazinParams fit_map(const PartialLightCurve& plc, const ClassPrior& prior, Passband band, const FitOptions& options) {
  return fit_map(BandSeries::from(plc, band), prior.band(band), options).params;
}

}  // namespace sentinel::bazin
