#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentinel/anomaly.hpp"

namespace sentinel::eval {

/// Anomalies are the positive class. A score >= threshold is flagged.
struct RocResult {
  std::vector<double> thresholds;          // descending, first is +inf
  std::vector<double> true_anomaly_rate;   // recall on anomalies
  std::vector<double> false_anomaly_rate;  // false-positive rate on normals
  double auc = 0.5;
};

/// ROC over every distinct score. Tied scores move together, so the
/// trapezoidal area equals P(anomaly > normal) + 0.5 P(tie). The area is
/// accumulated in integer pair counts and divided once. Throws kEmptyInput.
RocResult roc_curve(std::span<const double> normal_scores, std::span<const double> anomaly_scores);

/// Running-score trajectory of one transient, possibly pooled over models.
struct ScoreTrack {
  std::string transient_id;
  std::string class_label;
  std::vector<double> times;
  std::vector<double> running;

  std::optional<double> value_at(double t) const;  // last point with time <= t
  double final_score() const { return running.empty() ? 0.0 : running.back(); }
};

ScoreTrack track_of(const anomaly::AnomalyScoreSeries& series);

/// Pool one transient's tracks from several trained models: at every time the
/// pooled score is the minimum over the models that already have a score, so
/// a transient only looks anomalous if no trained class explains it.
ScoreTrack pool_min(std::span<const ScoreTrack> per_model);

struct AucTimeSeries {
  std::string anomaly_class;
  std::vector<double> times;
  std::vector<std::optional<double>> auc;  // absent where either group has no scores yet
};

AucTimeSeries auc_over_time(std::span<const ScoreTrack> normal, std::span<const ScoreTrack> anomalous,
                            std::span<const double> grid, std::string anomaly_class = {});
AucTimeSeries auc_over_time(std::span<const anomaly::AnomalyScoreSeries> normal,
                            std::span<const anomaly::AnomalyScoreSeries> anomalous, std::span<const double> grid,
                            std::string anomaly_class = {});

struct HistogramSummary {
  std::string label;
  std::string passband;  // "g", "r" or "all"
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t n = 0;
  double mean = 0.0;  // of the raw values
  double rms = 0.0;   // sqrt(mean(x^2)) of the raw values
};

/// Freedman-Diaconis edges, capped at max_bins; one unit-wide bin for constant data.
std::vector<double> freedman_diaconis_edges(std::span<const double> values, std::size_t max_bins = 100);

HistogramSummary histogram(std::span<const double> values, std::string label = {}, std::string passband = "all",
                           std::size_t max_bins = 100);

/// Histogram of each transient's final running score. Throws kEmptyInput.
HistogramSummary score_distribution(std::span<const anomaly::AnomalyScoreSeries> series, std::string label = {},
                                    std::size_t max_bins = 100);

struct TimeSlice {
  double lo = 0.0;  // inclusive
  double hi = 0.0;  // exclusive
  std::string label() const;
};

/// One MUSPE histogram per (slice, passband), then all-times histograms per
/// passband and over both passbands (label "all"). Throws kEmptyInput, or
/// kInvalidParams for overlapping slices.
std::vector<HistogramSummary> muspe_histograms(std::span<const anomaly::AnomalyScoreSeries> series,
                                               std::span<const TimeSlice> slices, std::size_t max_bins = 100);

double quantile(std::vector<double> values, double q);

}  // namespace sentinel::eval
