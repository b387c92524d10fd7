#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sentinel/error.hpp"
#include "sentinel/eval.hpp"
#include "sentinel/toy_predictors.hpp"
#include "test_support.hpp"

using namespace sentinel;
using namespace sentinel::eval;

namespace {

// O(n*m) Mann-Whitney statistic in integer half-counts.
double mann_whitney(const std::vector<double>& normal, const std::vector<double>& anomalous) {
  std::uint64_t twice = 0;
  for (double a : anomalous) {
    for (double n : normal) twice += a > n ? 2 : (a == n ? 1 : 0);
  }
  return static_cast<double>(twice) / (2.0 * static_cast<double>(normal.size() * anomalous.size()));
}

ScoreTrack track(std::vector<double> times, std::vector<double> running, std::string id = "x") {
  ScoreTrack t;
  t.transient_id = std::move(id);
  t.times = std::move(times);
  t.running = std::move(running);
  return t;
}

anomaly::AnomalyScoreSeries series_of(const std::vector<double>& times, const std::vector<double>& muspe,
                                      Passband band = Passband::g) {
  anomaly::AnomalyScoreSeries s;
  double sum = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    anomaly::ScoredStep step;
    step.time = times[i];
    step.passband = band;
    step.muspe = muspe[i];
    step.chi2 = muspe[i] * muspe[i];
    sum += step.chi2;
    step.running_score = sum / static_cast<double>(i + 1);
    s.steps.push_back(step);
  }
  return s;
}

}  // namespace

// =============================================================================
// ROC
// =============================================================================

TEST(Roc, WorkedExamples) {
  EXPECT_EQ(roc_curve(std::vector{1.0, 2.0}, std::vector{3.0, 4.0}).auc, 1.0);
  EXPECT_EQ(roc_curve(std::vector{1.0, 3.0}, std::vector{2.0, 4.0}).auc, 0.75);
  EXPECT_EQ(roc_curve(std::vector{3.0, 4.0}, std::vector{1.0, 2.0}).auc, 0.0);
  EXPECT_EQ(roc_curve(std::vector{5.0}, std::vector{5.0}).auc, 0.5);
}

TEST(Roc, CurveShape) {
  const auto roc = roc_curve(std::vector{1.0, 3.0}, std::vector{2.0, 4.0});
  ASSERT_EQ(roc.thresholds.size(), 5u);
  EXPECT_EQ(roc.thresholds.front(), std::numeric_limits<double>::infinity());
  EXPECT_EQ(roc.true_anomaly_rate.front(), 0.0);
  EXPECT_EQ(roc.false_anomaly_rate.front(), 0.0);
  EXPECT_EQ(roc.true_anomaly_rate.back(), 1.0);
  EXPECT_EQ(roc.false_anomaly_rate.back(), 1.0);
}

TEST(Roc, MatchesBruteForceMannWhitneyWithTies) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + rng() % 200;
    const auto m = 1 + rng() % 200;
    std::vector<double> normal(n);
    std::vector<double> anomalous(m);
    // Coarse integer scores force plenty of ties.
    for (auto& v : normal) v = static_cast<double>(rng() % 20);
    for (auto& v : anomalous) v = static_cast<double>(rng() % 25);
    const auto roc = roc_curve(normal, anomalous);
    EXPECT_EQ(roc.auc, mann_whitney(normal, anomalous)) << "trial " << trial;
    for (std::size_t k = 1; k < roc.thresholds.size(); ++k) {
      EXPECT_LT(roc.thresholds[k], roc.thresholds[k - 1]);
      EXPECT_GE(roc.true_anomaly_rate[k], roc.true_anomaly_rate[k - 1]);
      EXPECT_GE(roc.false_anomaly_rate[k], roc.false_anomaly_rate[k - 1]);
    }
  }
}

TEST(Roc, NullScoresGiveHalf) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::vector<double> a(2000);
  std::vector<double> b(2000);
  for (auto& v : a) v = z(rng);
  for (auto& v : b) v = z(rng);
  EXPECT_NEAR(roc_curve(a, b).auc, 0.5, 0.05);
}

TEST(Roc, InvalidInput) {
  try {
    roc_curve(std::vector<double>{}, std::vector{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  EXPECT_THROW(roc_curve(std::vector{std::nan("")}, std::vector{1.0}), Error);
}

// =============================================================================
// Tracks, pooling, AUC over time
// =============================================================================

TEST(Tracks, ValueAtIsLastPointNotAfter) {
  const auto t = track({0.0, 5.0, 10.0}, {1.0, 2.0, 3.0});
  EXPECT_FALSE(t.value_at(-0.1).has_value());
  EXPECT_EQ(*t.value_at(0.0), 1.0);
  EXPECT_EQ(*t.value_at(7.0), 2.0);
  EXPECT_EQ(*t.value_at(100.0), 3.0);
}

TEST(Tracks, SameTimeStepsCollapseToLatest) {
  auto s = series_of({1.0, 1.0, 4.0}, {1.0, 3.0, 0.0});
  const auto t = track_of(s);
  ASSERT_EQ(t.times.size(), 2u);
  EXPECT_EQ(t.running[0], 5.0);
  EXPECT_EQ(t.running[1], 10.0 / 3.0);
}

TEST(Tracks, PoolMinTakesSmallestAvailable) {
  const std::vector<ScoreTrack> per_model{track({0.0, 10.0}, {5.0, 1.0}), track({3.0, 6.0}, {2.0, 8.0})};
  const auto pooled = pool_min(per_model);
  EXPECT_EQ(pooled.times, (std::vector{0.0, 3.0, 6.0, 10.0}));
  EXPECT_EQ(pooled.running, (std::vector{5.0, 2.0, 5.0, 1.0}));
}

TEST(AucOverTime, AbsentBeforeScoresAndFinalMatchesRoc) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScoreTrack> normal;
  std::vector<ScoreTrack> anomalous;
  std::vector<double> nf;
  std::vector<double> af;
  for (int i = 0; i < 30; ++i) {
    normal.push_back(track({0.0, 10.0, 20.0}, {u(rng), u(rng), u(rng)}));
    anomalous.push_back(track({5.0, 15.0}, {u(rng), 1.0 + u(rng)}));
    nf.push_back(normal.back().final_score());
    af.push_back(anomalous.back().final_score());
  }
  const std::vector<double> grid{-1.0, 2.0, 50.0};
  const auto series = auc_over_time(normal, anomalous, grid, "x");
  ASSERT_EQ(series.auc.size(), 3u);
  EXPECT_FALSE(series.auc[0].has_value());
  EXPECT_FALSE(series.auc[1].has_value());
  ASSERT_TRUE(series.auc[2].has_value());
  EXPECT_EQ(*series.auc[2], roc_curve(nf, af).auc);
}

TEST(AucOverTime, ToyPairSeparatesPerfectly) {
  std::vector<anomaly::AnomalyScoreSeries> good;
  std::vector<anomaly::AnomalyScoreSeries> bad;
  for (int i = 0; i < 5; ++i) {
    const auto lc = fixtures::bazin_curve(fixtures::typical_params(), "c" + std::to_string(i), "c");
    good.push_back(anomaly::score_lightcurve(lc, anomaly::PerfectOraclePredictor()));
    bad.push_back(anomaly::score_lightcurve(lc, anomaly::GrossMisfitPredictor()));
  }
  const std::vector<double> grid{0.0, 30.0, 60.0};
  const auto series = auc_over_time(good, bad, grid);
  for (const auto& a : series.auc) {
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a, 1.0);
  }
}

// =============================================================================
// Histograms
// =============================================================================

TEST(Histogram, ConstantScores) {
  const std::vector<double> v(50, 3.5);
  const auto h = histogram(v, "c");
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts[0], 50u);
  EXPECT_DOUBLE_EQ(h.mean, 3.5);
  EXPECT_DOUBLE_EQ(h.rms, 3.5);
  EXPECT_LE(h.bin_edges.front(), 3.5);
  EXPECT_GE(h.bin_edges.back(), 3.5);
}

TEST(Histogram, UnitGaussianMoments) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  std::vector<double> v(10000);
  for (auto& x : v) x = z(rng);
  const auto h = histogram(v);
  EXPECT_LT(std::abs(h.mean), 0.05);
  EXPECT_GE(h.rms, 0.95);
  EXPECT_LE(h.rms, 1.05);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  EXPECT_EQ(total, v.size());
  EXPECT_LE(h.counts.size(), 100u);
}

TEST(Histogram, MomentsMatchTwoPass) {
  std::mt19937_64 rng(12);
  std::lognormal_distribution<double> d(0.0, 1.5);
  std::vector<double> v(5000);
  for (auto& x : v) x = d(rng);
  long double sum = 0.0L;
  for (double x : v) sum += x;
  const double mean = static_cast<double>(sum / v.size());
  long double sq = 0.0L;
  for (double x : v) sq += static_cast<long double>(x) * x;
  const double rms = std::sqrt(static_cast<double>(sq / v.size()));
  const auto h = histogram(v);
  EXPECT_NEAR(h.mean, mean, 1e-10 * mean);
  EXPECT_NEAR(h.rms, rms, 1e-10 * rms);
}

TEST(Histogram, BinCapAndSturgesFallback) {
  std::vector<double> heavy(2000, 0.0);
  heavy.push_back(1e6);
  // IQR is zero, so Sturges applies.
  EXPECT_EQ(freedman_diaconis_edges(heavy).size() - 1, 12u);
  std::mt19937_64 rng(3);
  std::cauchy_distribution<double> c;
  std::vector<double> wide(5000);
  for (auto& x : wide) x = c(rng);
  EXPECT_EQ(freedman_diaconis_edges(wide, 40).size() - 1, 40u);
}

TEST(Histogram, EmptyThrows) {
  try {
    histogram(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(MuspeHistograms, SlicesAndTotals) {
  std::vector<anomaly::AnomalyScoreSeries> s{series_of({-5.0, 1.0, 2.0, 30.0}, {0.5, -1.0, 2.0, 4.0}),
                                             series_of({0.0, 25.0}, {1.0, 1.0}, Passband::r)};
  const std::vector<TimeSlice> slices{{-10.0, 0.0}, {0.0, 20.0}, {20.0, 40.0}};
  const auto h = muspe_histograms(s, slices);
  // 3 slices x 2 bands, then per band, then everything.
  ASSERT_EQ(h.size(), 6u + 2u + 1u);
  EXPECT_EQ(h[0].label, "[-10:0)");
  EXPECT_EQ(h[0].n, 1u);
  EXPECT_EQ(h[1].n, 0u);
  EXPECT_EQ(h[2].n, 2u);
  EXPECT_EQ(h[3].n, 1u);
  EXPECT_EQ(h[2].mean, 0.5);
  EXPECT_EQ(h.back().label, "all");
  EXPECT_EQ(h.back().passband, "all");
  EXPECT_EQ(h.back().n, 6u);
}

TEST(MuspeHistograms, OverlappingSlicesRejected) {
  std::vector<anomaly::AnomalyScoreSeries> s{series_of({1.0}, {1.0})};
  const std::vector<TimeSlice> slices{{0.0, 20.0}, {10.0, 30.0}};
  try {
    muspe_histograms(s, slices);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
  }
  std::vector<anomaly::AnomalyScoreSeries> none{anomaly::AnomalyScoreSeries{}};
  const std::vector<TimeSlice> ok{{0.0, 20.0}};
  EXPECT_THROW(muspe_histograms(none, ok), Error);
}

TEST(Quantile, Type7) {
  EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.5), 2.5);
  EXPECT_EQ(quantile({4.0, 1.0, 3.0, 2.0}, 0.25), 1.75);
  EXPECT_EQ(quantile({7.0}, 0.9), 7.0);
}
