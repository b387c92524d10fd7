#include "sentinel/anomaly.hpp"

#include <algorithm>
#include <cmath>

#include "sentinel/error.hpp"

namespace sentinel::anomaly {
namespace {

void check_match(const Prediction& pred, const Observation& obs, double time_tolerance) {
  if (pred.passband != obs.passband) {
    throw Error(ErrorCode::kPassbandMismatch, "prediction for " + std::string(to_string(pred.passband)) +
                                                  " scored against " + std::string(to_string(obs.passband)));
  }
  if (!(std::abs(pred.target_time - obs.time) <= time_tolerance)) {
    throw Error(ErrorCode::kTimeMismatch, "prediction at " + std::to_string(pred.target_time) +
                                              " scored against observation at " + std::to_string(obs.time));
  }
}

}  // namespace

double chi2_step(const Prediction& pred, const Observation& obs, double time_tolerance) {
  check_match(pred, obs, time_tolerance);
  const double resid = pred.y - obs.flux;
  return resid * resid / (pred.sigma_y * pred.sigma_y + obs.flux_err * obs.flux_err);
}

double muspe_step(const Prediction& pred, const Observation& obs, double time_tolerance) {
  check_match(pred, obs, time_tolerance);
  return (pred.y - obs.flux) / obs.flux_err;
}

bool AnomalyScoreSeries::running_score_at(double t, double& out) const {
  const auto it = std::upper_bound(steps.begin(), steps.end(), t,
                                   [](double v, const ScoredStep& s) { return v < s.time; });
  if (it == steps.begin()) return false;
  out = std::prev(it)->running_score;
  return true;
}

AnomalyScoreSeries score_lightcurve(const LightCurve& lc, const Predictor& model, const ScoringOptions& options) {
  AnomalyScoreSeries series;
  series.transient_id = lc.transient_id();
  series.class_label = lc.class_label();
  series.model_class = model.model_class();

  const auto obs = lc.observations();
  std::vector<double> horizons;
  for (const auto& o : obs) {
    if (horizons.empty() || horizons.back() != o.time) horizons.push_back(o.time);
  }

  for (double T : horizons) {
    const auto history = slice_until(lc, T);
    const double aim = T + options.horizon;
    for (Passband band : kPassbands) {
      const Observation* target = nullptr;
      for (const auto& o : obs) {
        if (o.passband != band || o.time <= T || std::abs(o.time - aim) > options.match_window) continue;
        if (target == nullptr || std::abs(o.time - aim) < std::abs(target->time - aim)) target = &o;
      }
      if (target == nullptr) continue;
      try {
        const Prediction pred = model.predict(history, band, target->time);
        ScoredStep step;
        step.time = target->time;
        step.passband = band;
        step.horizon_time = T;
        step.chi2 = chi2_step(pred, *target, options.match_window);
        step.muspe = muspe_step(pred, *target, options.match_window);
        if (!std::isfinite(step.chi2) || !std::isfinite(step.muspe)) {
          throw Error(ErrorCode::kModelFailure, "non-finite score");
        }
        step.prediction = pred;
        step.observed = *target;
        series.steps.push_back(std::move(step));
      } catch (const Error& e) {
        series.failures.push_back(StepFailure{T, target->time, band, e.what()});
      }
    }
  }
  // Steps are generated in horizon order; target epochs can interleave across bands.
  std::stable_sort(series.steps.begin(), series.steps.end(),
                   [](const ScoredStep& a, const ScoredStep& b) { return a.time < b.time; });
  double chi2_sum = 0.0;
  for (std::size_t i = 0; i < series.steps.size(); ++i) {
    chi2_sum += series.steps[i].chi2;
    series.steps[i].running_score = chi2_sum / static_cast<double>(i + 1);
  }
  return series;
}

}  // namespace sentinel::anomaly
