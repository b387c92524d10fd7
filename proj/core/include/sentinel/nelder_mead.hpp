#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Core>

namespace sentinel::optim {

struct NelderMeadOptions {
  std::size_t max_evaluations = 4000;
  double f_tolerance = 1e-10;  // spread of simplex values
  double x_tolerance = 1e-8;   // simplex diameter
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimisation with the dimension-adaptive coefficients of
/// Gao & Han (2012). Non-finite objective values are treated as +inf.
NelderMeadResult minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const Eigen::VectorXd& step,
                          const NelderMeadOptions& options = {});

}  // namespace sentinel::optim
