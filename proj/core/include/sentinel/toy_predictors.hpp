#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sentinel/anomaly_io.hpp"
#include "sentinel/prediction.hpp"

namespace sentinel::anomaly {

/// Cheats by reading the future observation from the source curve: y = D and
/// sigma_y = sigma_D. Scores are identically zero; used as a reference model.
class PerfectOraclePredictor final : public Predictor {
 public:
  explicit PerfectOraclePredictor(std::string name = "perfect_oracle") : name_(std::move(name)) {}
  std::string model_class() const override { return name_; }
  Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const override;

 private:
  std::string name_;
};

/// Always predicts the same value.
class ConstantPredictor final : public Predictor {
 public:
  ConstantPredictor(double y, double sigma_y, std::string name = "constant")
      : y_(y), sigma_y_(sigma_y), name_(std::move(name)) {}
  std::string model_class() const override { return name_; }
  Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const override;

 private:
  double y_;
  double sigma_y_;
  std::string name_;
};

/// Also reads the future observation, but misses it by `offset_sigmas` measurement
/// standard deviations with sigma_y = sigma_D, so every step has
/// chi2 = offset_sigmas^2 / 2.
class GrossMisfitPredictor final : public Predictor {
 public:
  explicit GrossMisfitPredictor(double offset_sigmas = 10.0, std::string name = "gross_misfit")
      : offset_(offset_sigmas), name_(std::move(name)) {}
  std::string model_class() const override { return name_; }
  Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const override;

 private:
  double offset_;
  std::string name_;
};

/// Replays forecasts produced elsewhere (shared prediction-file schema). The row
/// nearest the requested target time within `match_window` is used; a missing
/// row is a kModelFailure.
class ExternalPredictor final : public Predictor {
 public:
  ExternalPredictor(std::string model_class, const std::vector<PredictionRecord>& rows, double match_window = 0.5);
  std::string model_class() const override { return name_; }
  Prediction predict(const PartialLightCurve& history, Passband band, double target_time) const override;

 private:
  std::string name_;
  double match_window_;
  std::map<std::pair<std::string, Passband>, std::vector<Prediction>> table_;  // sorted by time
};

}  // namespace sentinel::anomaly
