#pragma once

#include <string>
#include <vector>

#include "sentinel/lightcurve.hpp"
#include "sentinel/prediction.hpp"

namespace sentinel::anomaly {

struct ScoringOptions {
  double horizon = 3.0;       // days ahead of the conditioning time
  double match_window = 0.5;  // accepted distance of the target epoch from T + horizon
};

/// Chi-square of one forecast against the observation it targets:
/// (y - D)^2 / (sigma_y^2 + sigma_D^2). Throws kTimeMismatch / kPassbandMismatch.
double chi2_step(const Prediction& pred, const Observation& obs, double time_tolerance = 0.5);

/// Signed error in units of the measurement uncertainty only: (y - D) / sigma_D.
double muspe_step(const Prediction& pred, const Observation& obs, double time_tolerance = 0.5);

struct ScoredStep {
  double time = 0.0;          // epoch of the scored observation
  Passband passband = Passband::g;
  double chi2 = 0.0;
  double muspe = 0.0;
  double running_score = 0.0;  // mean chi2 over this and all earlier steps
  // Populated by score_lightcurve; left default when read back from CSV.
  double horizon_time = 0.0;   // latest data time the prediction was allowed to use
  Prediction prediction;
  Observation observed;
};

struct StepFailure {
  double horizon_time = 0.0;
  double target_time = 0.0;
  Passband passband = Passband::g;
  std::string reason;
};

struct AnomalyScoreSeries {
  std::string transient_id;
  std::string class_label;
  std::string model_class;
  std::vector<ScoredStep> steps;
  std::vector<StepFailure> failures;

  bool empty() const { return steps.empty(); }
  double final_score() const { return steps.empty() ? 0.0 : steps.back().running_score; }
  /// Running score at the last step with time <= t; false when no step qualifies.
  bool running_score_at(double t, double& out) const;
};

/// Causal walk over a light curve. For every distinct observation time T and
/// passband, the model sees only data with time <= T and forecasts the epoch of
/// that passband closest to T + horizon inside the match window (steps without
/// such an epoch are skipped). Model errors are recorded as failures and the
/// step is dropped.
AnomalyScoreSeries score_lightcurve(const LightCurve& lc, const Predictor& model, const ScoringOptions& options = {});

}  // namespace sentinel::anomaly
