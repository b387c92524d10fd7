#include <gtest/gtest.h>

#include <cmath>

#include "sentinel/bazin/function.hpp"
#include "sentinel/bazin/predict.hpp"
#include "sentinel/error.hpp"
#include "test_support.hpp"

using namespace sentinel;
using namespace sentinel::bazin;

namespace {

PosteriorSamples repeated(const BazinParams& p, std::size_t n) {
  PosteriorSamples s;
  s.draws.assign(n, p);
  s.transformed.assign(n, to_transformed(p).values);
  s.log_posterior.assign(n, 0.0);
  s.chain.assign(n, 0);
  return s;
}

BazinPredictorOptions fast_options(std::uint64_t seed = 1) {
  BazinPredictorOptions o;
  o.sampler.n_draws = 200;
  o.sampler.burn_in = 100;
  o.prior_draws = 200;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(Predict, DeterministicDrawsGiveCurveValue) {
  auto p = fixtures::typical_params();
  p.sigma_int = kSigmaIntFloor;
  auto s = repeated(p, 1);
  Rng rng(1);
  const auto pred = predict(s, 10.0, Passband::g, rng);
  EXPECT_NEAR(pred.y, bazin_flux(p, 10.0), 5.0 * p.amplitude * p.sigma_int);
  EXPECT_EQ(pred.sigma_y, kSigmaYFloor);
  EXPECT_EQ(pred.n_samples_used, 1u);
}

TEST(Predict, IntrinsicScatterSetsSpread) {
  auto p = fixtures::typical_params();
  p.sigma_int = 0.05;
  Rng rng(2);
  const auto pred = predict(repeated(p, 20000), 10.0, Passband::r, rng);
  const double expected = p.amplitude * p.sigma_int;
  EXPECT_NEAR(pred.sigma_y, expected, 0.03 * expected);
  EXPECT_NEAR(pred.y, bazin_flux(p, 10.0), 4.0 * expected / std::sqrt(20000.0));
}

TEST(Predict, MixtureMomentsArePopulationMoments) {
  auto a = fixtures::typical_params();
  a.sigma_int = kSigmaIntFloor;
  auto b = a;
  b.baseline += 10.0;
  PosteriorSamples s = repeated(a, 1);
  s.draws.push_back(b);
  Rng rng(3);
  const auto pred = predict(s, -50.0, Passband::g, rng);
  EXPECT_NEAR(pred.y, a.baseline + 5.0, 0.1);
  EXPECT_NEAR(pred.sigma_y, 5.0, 0.1);  // population std of {x, x + 10}
}

TEST(Predict, EmptySamplesThrow) {
  Rng rng(4);
  try {
    predict(PosteriorSamples{}, 0.0, Passband::g, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySamples);
  }
}

// =============================================================================
// BazinPredictor
// =============================================================================

TEST(BazinPredictor, CausalityMetamorphic) {
  const auto p = fixtures::typical_params();
  const auto a = fixtures::bazin_curve(p, "same", "c", -30, 60, 3, 5.0);
  // Same id and history up to T = 9; wildly different afterwards.
  std::vector<Observation> obs(a.observations().begin(), a.observations().end());
  for (auto& o : obs) {
    if (o.time > 9.0) o.flux = -500.0 + o.time;
  }
  const LightCurve b("same", "c", obs);
  const BazinPredictor model(broad_hyper_prior(), fast_options());
  for (Passband band : kPassbands) {
    const auto pa = model.predict(slice_until(a, 9.0), band, 12.0);
    const auto pb = model.predict(slice_until(b, 9.0), band, 12.0);
    EXPECT_EQ(pa.y, pb.y);
    EXPECT_EQ(pa.sigma_y, pb.sigma_y);
  }
}

TEST(BazinPredictor, IndependentOfCallOrder) {
  const auto lc = fixtures::bazin_curve(fixtures::typical_params(), "x", "c", -30, 60, 3, 5.0);
  const BazinPredictor model(broad_hyper_prior(), fast_options(5));
  const auto first = model.predict(slice_until(lc, 0.0), Passband::g, 3.0);
  model.predict(slice_until(lc, 30.0), Passband::r, 33.0);
  const auto again = model.predict(slice_until(lc, 0.0), Passband::g, 3.0);
  EXPECT_EQ(first.y, again.y);
  EXPECT_EQ(first.sigma_y, again.sigma_y);
}

TEST(BazinPredictor, FewPointsFallBackToPriorPredictive) {
  const auto lc = fixtures::bazin_curve(fixtures::typical_params(), "x", "c", -30, 60, 3, 5.0);
  auto opts = fast_options();
  opts.prior_draws = 321;
  const BazinPredictor model(broad_hyper_prior(), opts);
  const auto pred = model.predict(slice_until(lc, -27.0), Passband::g, -24.0);
  EXPECT_EQ(pred.n_samples_used, 321u);
  EXPECT_GT(pred.sigma_y, 0.0);
}

TEST(BazinPredictor, TracksTheCurveWithData) {
  const auto p = fixtures::typical_params();
  const auto lc = fixtures::bazin_curve(p, "x", "c", -30, 60, 3, 2.0);
  const BazinPredictor model(broad_hyper_prior(), fast_options());
  const auto pred = model.predict(slice_until(lc, 30.0), Passband::g, 33.0);
  EXPECT_NEAR(pred.y, bazin_flux(p, 33.0), 3.0 * pred.sigma_y + 2.0);
  EXPECT_EQ(model.model_class(), "hyper");
}
