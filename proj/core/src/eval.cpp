#include "sentinel/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel::eval {

RocResult roc_curve(std::span<const double> normal_scores, std::span<const double> anomaly_scores) {
  if (normal_scores.empty() || anomaly_scores.empty()) {
    throw Error(ErrorCode::kEmptyInput, "ROC needs at least one normal and one anomalous score");
  }
  const auto nan = [](double v) { return std::isnan(v); };
  if (std::any_of(normal_scores.begin(), normal_scores.end(), nan) ||
      std::any_of(anomaly_scores.begin(), anomaly_scores.end(), nan)) {
    throw Error(ErrorCode::kInvalidParams, "NaN anomaly score");
  }
  std::vector<double> normal(normal_scores.begin(), normal_scores.end());
  std::vector<double> anomalous(anomaly_scores.begin(), anomaly_scores.end());
  std::sort(normal.begin(), normal.end(), std::greater<>());
  std::sort(anomalous.begin(), anomalous.end(), std::greater<>());

  RocResult roc;
  roc.thresholds.push_back(std::numeric_limits<double>::infinity());
  roc.true_anomaly_rate.push_back(0.0);
  roc.false_anomaly_rate.push_back(0.0);

  const auto n_norm = static_cast<std::uint64_t>(normal.size());
  const auto n_anom = static_cast<std::uint64_t>(anomalous.size());
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t twice_area = 0;  // in units of 1 / (n_norm * n_anom)
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < anomalous.size() || j < normal.size()) {
    double thr = -std::numeric_limits<double>::infinity();
    if (i < anomalous.size()) thr = std::max(thr, anomalous[i]);
    if (j < normal.size()) thr = std::max(thr, normal[j]);
    const std::uint64_t tp_prev = tp;
    const std::uint64_t fp_prev = fp;
    while (i < anomalous.size() && anomalous[i] >= thr) ++i, ++tp;
    while (j < normal.size() && normal[j] >= thr) ++j, ++fp;
    twice_area += (fp - fp_prev) * (tp + tp_prev);
    roc.thresholds.push_back(thr);
    roc.true_anomaly_rate.push_back(static_cast<double>(tp) / static_cast<double>(n_anom));
    roc.false_anomaly_rate.push_back(static_cast<double>(fp) / static_cast<double>(n_norm));
  }
  roc.auc = static_cast<double>(twice_area) / (2.0 * static_cast<double>(n_norm) * static_cast<double>(n_anom));
  return roc;
}

std::optional<double> ScoreTrack::value_at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return std::nullopt;
  return running[static_cast<std::size_t>(it - times.begin()) - 1];
}

ScoreTrack track_of(const anomaly::AnomalyScoreSeries& series) {
  ScoreTrack track;
  track.transient_id = series.transient_id;
  track.class_label = series.class_label;
  for (const auto& step : series.steps) {
    // Several steps can share a time (one per passband); keep the latest value.
    if (!track.times.empty() && track.times.back() == step.time) {
      track.running.back() = step.running_score;
    } else {
      track.times.push_back(step.time);
      track.running.push_back(step.running_score);
    }
  }
  return track;
}

ScoreTrack pool_min(std::span<const ScoreTrack> per_model) {
  ScoreTrack pooled;
  if (per_model.empty()) return pooled;
  pooled.transient_id = per_model.front().transient_id;
  pooled.class_label = per_model.front().class_label;
  std::vector<double> times;
  for (const auto& t : per_model) times.insert(times.end(), t.times.begin(), t.times.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (double t : times) {
    std::optional<double> best;
    for (const auto& track : per_model) {
      if (const auto v = track.value_at(t); v && (!best || *v < *best)) best = v;
    }
    if (best) {
      pooled.times.push_back(t);
      pooled.running.push_back(*best);
    }
  }
  return pooled;
}

AucTimeSeries auc_over_time(std::span<const ScoreTrack> normal, std::span<const ScoreTrack> anomalous,
                            std::span<const double> grid, std::string anomaly_class) {
  AucTimeSeries out;
  out.anomaly_class = std::move(anomaly_class);
  for (double t : grid) {
    std::vector<double> norm_scores;
    std::vector<double> anom_scores;
    for (const auto& track : normal) {
      if (const auto v = track.value_at(t)) norm_scores.push_back(*v);
    }
    for (const auto& track : anomalous) {
      if (const auto v = track.value_at(t)) anom_scores.push_back(*v);
    }
    out.times.push_back(t);
    if (norm_scores.empty() || anom_scores.empty()) {
      out.auc.push_back(std::nullopt);
    } else {
      out.auc.push_back(roc_curve(norm_scores, anom_scores).auc);
    }
  }
  return out;
}

AucTimeSeries auc_over_time(std::span<const anomaly::AnomalyScoreSeries> normal,
                            std::span<const anomaly::AnomalyScoreSeries> anomalous, std::span<const double> grid,
                            std::string anomaly_class) {
  std::vector<ScoreTrack> n;
  std::vector<ScoreTrack> a;
  for (const auto& s : normal) n.push_back(track_of(s));
  for (const auto& s : anomalous) a.push_back(track_of(s));
  return auc_over_time(n, a, grid, std::move(anomaly_class));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<double> freedman_diaconis_edges(std::span<const double> values, std::size_t max_bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of empty sample");
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (!(hi > lo)) return {lo - 0.5, lo + 0.5};

  std::vector<double> v(values.begin(), values.end());
  const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
  const double n = static_cast<double>(values.size());
  std::size_t bins = 0;
  if (iqr > 0.0) {
    const double width = 2.0 * iqr / std::cbrt(n);
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  } else {
    bins = static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;  // Sturges
  }
  bins = std::clamp<std::size_t>(bins, 1, std::max<std::size_t>(1, max_bins));
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i < bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
  edges[bins] = hi;
  return edges;
}

HistogramSummary histogram(std::span<const double> values, std::string label, std::string passband,
                           std::size_t max_bins) {
  HistogramSummary h;
  h.label = std::move(label);
  h.passband = std::move(passband);
  h.bin_edges = freedman_diaconis_edges(values, max_bins);
  h.counts.assign(h.bin_edges.size() - 1, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : values) {
    sum += x;
    sum_sq += x * x;
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), x);
    auto bin = static_cast<std::size_t>(it - h.bin_edges.begin());
    bin = std::clamp<std::size_t>(bin, 1, h.counts.size()) - 1;
    ++h.counts[bin];
  }
  h.n = values.size();
  h.mean = sum / static_cast<double>(h.n);
  h.rms = std::sqrt(sum_sq / static_cast<double>(h.n));
  return h;
}

HistogramSummary score_distribution(std::span<const anomaly::AnomalyScoreSeries> series, std::string label,
                                    std::size_t max_bins) {
  std::vector<double> finals;
  for (const auto& s : series) {
    if (!s.empty()) finals.push_back(s.final_score());
  }
  if (finals.empty()) throw Error(ErrorCode::kEmptyInput, "no scored series");
  return histogram(finals, std::move(label), "all", max_bins);
}

std::string TimeSlice::label() const {
  return "[" + text::format_double(lo) + ":" + text::format_double(hi) + ")";
}

std::vector<HistogramSummary> muspe_histograms(std::span<const anomaly::AnomalyScoreSeries> series,
                                               std::span<const TimeSlice> slices, std::size_t max_bins) {
  std::vector<TimeSlice> sorted(slices.begin(), slices.end());
  std::sort(sorted.begin(), sorted.end(), [](const TimeSlice& a, const TimeSlice& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].hi > sorted[i].lo)) throw Error(ErrorCode::kInvalidParams, "empty time slice " + sorted[i].label());
    if (i > 0 && sorted[i].lo < sorted[i - 1].hi) {
      throw Error(ErrorCode::kInvalidParams, "overlapping time slices " + sorted[i - 1].label() + " and " + sorted[i].label());
    }
  }

  std::vector<double> all;
  std::array<std::vector<double>, kNumPassbands> all_band;
  for (const auto& s : series) {
    for (const auto& step : s.steps) {
      all.push_back(step.muspe);
      all_band[index_of(step.passband)].push_back(step.muspe);
    }
  }
  if (all.empty()) throw Error(ErrorCode::kEmptyInput, "no MUSPE values");

  std::vector<HistogramSummary> out;
  for (const auto& slice : slices) {
    for (Passband band : kPassbands) {
      std::vector<double> values;
      for (const auto& s : series) {
        for (const auto& step : s.steps) {
          if (step.passband == band && step.time >= slice.lo && step.time < slice.hi) values.push_back(step.muspe);
        }
      }
      if (values.empty()) {
        HistogramSummary empty;
        empty.label = slice.label();
        empty.passband = std::string(to_string(band));
        out.push_back(std::move(empty));
      } else {
        out.push_back(histogram(values, slice.label(), std::string(to_string(band)), max_bins));
      }
    }
  }
  for (Passband band : kPassbands) {
    if (!all_band[index_of(band)].empty()) out.push_back(histogram(all_band[index_of(band)], "all", std::string(to_string(band)), max_bins));
  }
  out.push_back(histogram(all, "all", "all", max_bins));
  return out;
}

}  // namespace sentinel::eval
