#include "sentinel/toy_predictors.hpp"

#include <algorithm>
#include <cmath>

#include "sentinel/error.hpp"

namespace sentinel::anomaly {

Prediction PerfectOraclePredictor::predict(const PartialLightCurve& history, Passband band, double target_time) const {
  for (const auto& o : history.source().observations()) {
    if (o.passband == band && o.time == target_time) {
      return Prediction{target_time, band, o.flux, o.flux_err, 1};
    }
  }
  throw Error(ErrorCode::kModelFailure, "oracle has no observation at " + std::to_string(target_time));
}

Prediction GrossMisfitPredictor::predict(const PartialLightCurve& history, Passband band, double target_time) const {
  for (const auto& o : history.source().observations()) {
    if (o.passband == band && o.time == target_time) {
      return Prediction{target_time, band, o.flux + offset_ * o.flux_err, o.flux_err, 1};
    }
  }
  throw Error(ErrorCode::kModelFailure, "misfit model has no observation at " + std::to_string(target_time));
}

Prediction ConstantPredictor::predict(const PartialLightCurve&, Passband band, double target_time) const {
  return Prediction{target_time, band, y_, sigma_y_, 1};
}

ExternalPredictor::ExternalPredictor(std::string model_class, const std::vector<PredictionRecord>& rows,
                                     double match_window)
    : name_(std::move(model_class)), match_window_(match_window) {
  for (const auto& r : rows) table_[{r.transient_id, r.prediction.passband}].push_back(r.prediction);
  for (auto& [key, preds] : table_) {
    std::stable_sort(preds.begin(), preds.end(),
                     [](const Prediction& a, const Prediction& b) { return a.target_time < b.target_time; });
  }
}

Prediction ExternalPredictor::predict(const PartialLightCurve& history, Passband band, double target_time) const {
  const auto it = table_.find({history.source().transient_id(), band});
  if (it != table_.end()) {
    const Prediction* best = nullptr;
    for (const auto& p : it->second) {
      const double d = std::abs(p.target_time - target_time);
      if (d <= match_window_ && (best == nullptr || d < std::abs(best->target_time - target_time))) best = &p;
    }
    if (best != nullptr) {
      Prediction out = *best;
      out.target_time = target_time;
      return out;
    }
  }
  throw Error(ErrorCode::kModelFailure, "no external prediction for '" + history.source().transient_id() + "' " +
                                            std::string(to_string(band)) + " near t=" + std::to_string(target_time));
}

}  // namespace sentinel::anomaly
