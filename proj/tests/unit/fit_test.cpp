#include <gtest/gtest.h>

#include <cmath>

#include "sentinel/bazin/fit.hpp"
#include "sentinel/error.hpp"
#include "test_support.hpp"

using namespace sentinel;
using namespace sentinel::bazin;

TEST(MapFit, RecoversNoiselessCurve) {
  auto truth = fixtures::typical_params();
  truth.sigma_int = 0.001;
  const auto lc = fixtures::bazin_curve(truth, "a", "c", -30.0, 60.0, 2.0, 0.5);
  const auto full = slice_until(lc, kWindowEnd);
  const auto p = fit_map(full, broad_hyper_prior(), Passband::g);
  EXPECT_NEAR(p.amplitude, truth.amplitude, 0.01 * truth.amplitude);
  EXPECT_NEAR(p.t0, truth.t0, 0.1);
  EXPECT_NEAR(p.tau_fall, truth.tau_fall, 0.02 * truth.tau_fall);
  EXPECT_NEAR(p.tau_rise, truth.tau_rise, 0.05 * truth.tau_rise);
  EXPECT_NEAR(p.baseline, truth.baseline, 0.5);
}

TEST(MapFit, MapBeatsStartingPoints) {
  const auto truth = fixtures::typical_params();
  const auto lc = fixtures::bazin_curve(truth);
  const auto data = BandSeries::from(slice_until(lc, kWindowEnd), Passband::r);
  const auto prior = broad_hyper_prior().band(Passband::r);
  const auto result = fit_map(data, prior);
  const LogPosterior post(data, prior);
  EXPECT_GE(result.log_posterior, post(prior.mean()));
  EXPECT_GE(result.successful_starts, 1u);
  EXPECT_DOUBLE_EQ(result.log_posterior, post(result.transformed));
}

TEST(MapFit, DeterministicForSeed) {
  const auto lc = fixtures::bazin_curve(fixtures::typical_params());
  const auto data = BandSeries::from(slice_until(lc, 10.0), Passband::g);
  FitOptions opts;
  opts.seed = 99;
  const auto a = fit_map(data, broad_hyper_prior().band(Passband::g), opts);
  const auto b = fit_map(data, broad_hyper_prior().band(Passband::g), opts);
  EXPECT_EQ(a.transformed, b.transformed);
}

TEST(MapFit, TooFewPointsThrows) {
  const auto lc = fixtures::bazin_curve(fixtures::typical_params());
  const auto early = slice_until(lc, -27.0);  // two epochs per band
  try {
    fit_map(early, broad_hyper_prior(), Passband::g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(LogPosterior, FloorAndNonFiniteGiveMinusInfinity) {
  const auto lc = fixtures::bazin_curve(fixtures::typical_params());
  const auto data = BandSeries::from(slice_until(lc, kWindowEnd), Passband::g);
  const auto prior = broad_hyper_prior().band(Passband::g);
  const LogPosterior post(data, prior);
  Vector6 x = to_transformed(fixtures::typical_params()).values;
  EXPECT_TRUE(std::isfinite(post(x)));
  x[kLogSigmaInt] = std::log(kSigmaIntFloor / 2.0);
  EXPECT_EQ(post(x), -std::numeric_limits<double>::infinity());
  x = to_transformed(fixtures::typical_params()).values;
  x[kLogAmplitude] = std::nan("");
  EXPECT_EQ(post(x), -std::numeric_limits<double>::infinity());
}
