#include <gtest/gtest.h>

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <random>

#include "sentinel/bazin/params.hpp"
#include "sentinel/bazin/prior.hpp"
#include "sentinel/error.hpp"
#include "test_support.hpp"

using namespace sentinel;
using namespace sentinel::bazin;

namespace {

Matrix6 random_spd(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix6 m;
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) m(i, j) = n(rng);
  return m * m.transpose() + 0.5 * Matrix6::Identity();
}

}  // namespace

TEST(BazinParams, TransformRoundTrip) {
  const auto p = fixtures::typical_params();
  const auto back = to_natural(to_transformed(p));
  EXPECT_NEAR(back.amplitude, p.amplitude, 1e-12 * p.amplitude);
  EXPECT_EQ(back.baseline, p.baseline);
  EXPECT_EQ(back.t0, p.t0);
  EXPECT_NEAR(back.tau_fall, p.tau_fall, 1e-13 * p.tau_fall);
  EXPECT_NEAR(back.tau_rise, p.tau_rise, 1e-13 * p.tau_rise);
  EXPECT_NEAR(back.sigma_int, p.sigma_int, 1e-15);
}

TEST(BazinParams, ValidateRejectsNonPositiveScales) {
  auto p = fixtures::typical_params();
  EXPECT_NO_THROW(p.validate());
  p.tau_rise = 0.0;
  try {
    p.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
  }
  p = fixtures::typical_params();
  p.amplitude = std::nan("");
  EXPECT_FALSE(p.valid());
}

TEST(GaussianPrior, LogDensityMatchesDirectFormula) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    const Matrix6 cov = random_spd(rng);
    Vector6 mean, x;
    for (Eigen::Index i = 0; i < 6; ++i) {
      mean[i] = n(rng);
      x[i] = n(rng);
    }
    const GaussianPrior prior(mean, cov);
    const Eigen::FullPivLU<Matrix6> lu(cov);
    const double quad = (x - mean).dot(lu.inverse() * (x - mean));
    const double expected = -0.5 * (6.0 * std::log(2.0 * std::numbers::pi) + std::log(lu.determinant()) + quad);
    EXPECT_NEAR(prior.log_density(x), expected, 1e-10);
  }
}

TEST(GaussianPrior, RejectsInvalidCovariance) {
  Matrix6 asym = Matrix6::Identity();
  asym(0, 1) = 0.5;
  EXPECT_THROW(GaussianPrior(Vector6::Zero(), asym), Error);
  Matrix6 indefinite = Matrix6::Identity();
  indefinite(2, 2) = -1.0;
  try {
    GaussianPrior(Vector6::Zero(), indefinite);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPrior);
  }
}

TEST(GaussianPrior, DrawMomentsMatch) {
  std::mt19937_64 gen(4);
  const Matrix6 cov = random_spd(gen);
  Vector6 mean;
  mean << 1, 2, 3, 4, 5, 6;
  const GaussianPrior prior(mean, cov);
  Rng rng(5);
  const int n = 40000;
  Vector6 sum = Vector6::Zero();
  Matrix6 sq = Matrix6::Zero();
  for (int i = 0; i < n; ++i) {
    const Vector6 x = prior.draw(rng);
    sum += x;
    sq += (x - mean) * (x - mean).transpose();
  }
  const Vector6 m = sum / n;
  const Matrix6 c = sq / n;
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(m[i], mean[i], 5.0 * std::sqrt(cov(i, i) / n));
    EXPECT_NEAR(c(i, i), cov(i, i), 5.0 * cov(i, i) * std::sqrt(2.0 / n));
  }
}

TEST(ClassPrior, JsonRoundTripIsExact) {
  std::mt19937_64 rng(6);
  ClassPrior prior;
  prior.class_name = "snia";
  for (auto& band : prior.bands) {
    Vector6 mean;
    for (Eigen::Index i = 0; i < 6; ++i) mean[i] = std::normal_distribution<double>()(rng) / 3.0;
    band = GaussianPrior(mean, random_spd(rng));
  }
  const auto back = prior_from_json(prior_to_json(prior));
  EXPECT_EQ(back.class_name, "snia");
  for (Passband b : kPassbands) {
    EXPECT_EQ(back.band(b).mean(), prior.band(b).mean());
    EXPECT_EQ(back.band(b).cov(), prior.band(b).cov());
  }
  EXPECT_EQ(prior_to_json(back), prior_to_json(prior));
}

TEST(ClassPrior, FileRoundTrip) {
  const auto dir = fixtures::scratch_dir("prior_io");
  const auto prior = broad_hyper_prior();
  save_prior(prior, dir / "p.json");
  const auto back = load_prior(dir / "p.json");
  EXPECT_EQ(back.band(Passband::r).mean(), prior.band(Passband::r).mean());
  EXPECT_THROW(load_prior(dir / "missing.json"), Error);
}

TEST(ClassPrior, MalformedJsonIsRejected) {
  EXPECT_THROW(prior_from_json("{\"class_name\": \"x\"}"), Error);
  EXPECT_THROW(prior_from_json("not json"), Error);
}
