#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sentinel/nelder_mead.hpp"

using sentinel::optim::minimize;
using sentinel::optim::NelderMeadOptions;

TEST(NelderMead, FindsQuadraticMinimum) {
  const auto f = [](const Eigen::VectorXd& x) { return (x[0] - 3.0) * (x[0] - 3.0) + 10.0 * (x[1] + 1.0) * (x[1] + 1.0); };
  const auto r = minimize(f, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 3.0, 1e-4);
  EXPECT_NEAR(r.x[1], -1.0, 1e-4);
}

TEST(NelderMead, SolvesRosenbrock) {
  const auto f = [](const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opts;
  opts.max_evaluations = 10000;
  const auto r = minimize(f, Eigen::Vector2d(-1.2, 1.0), Eigen::Vector2d(0.5, 0.5), opts);
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 1e-3);
}

TEST(NelderMead, SixDimensionalSphere) {
  const auto f = [](const Eigen::VectorXd& x) { return (x.array() - 0.5).square().sum(); };
  const auto r = minimize(f, Eigen::VectorXd::Zero(6), Eigen::VectorXd::Constant(6, 1.0));
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_NEAR(r.x[i], 0.5, 1e-3);
}

TEST(NelderMead, TreatsNonFiniteAsInfinite) {
  const auto f = [](const Eigen::VectorXd& x) {
    if (x[0] < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (x[0] - 1.0) * (x[0] - 1.0);
  };
  const auto r = minimize(f, Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
}

TEST(NelderMead, RespectsEvaluationBudget) {
  const auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  NelderMeadOptions opts;
  opts.max_evaluations = 50;
  const auto r = minimize(f, Eigen::VectorXd::Constant(4, 10.0), Eigen::VectorXd::Constant(4, 0.01), opts);
  EXPECT_LE(r.evaluations, 50u + 5u);
  EXPECT_FALSE(r.converged);
}
