#include "sentinel/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sentinel::optim {

NelderMeadResult minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const Eigen::VectorXd& step,
                          const NelderMeadOptions& options) {
  const auto n = start.size();
  const double dim = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dim;
  const double gamma = 0.75 - 1.0 / (2.0 * dim);
  const double delta = 1.0 - 1.0 / dim;

  std::size_t evals = 0;
  const auto f = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1), start);
  std::vector<double> values(simplex.size());
  for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += step[i];
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  bool converged = false;
  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) && spread <= options.f_tolerance * (1.0 + std::abs(values[best])) &&
        diameter <= options.x_tolerance * (1.0 + simplex[best].lpNorm<Eigen::Infinity>())) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dim;

    const Eigen::VectorXd reflected = centroid + alpha * (centroid - simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded = centroid + beta * (reflected - centroid);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < values[worst];
    const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + gamma * (reflected - centroid))
                                               : Eigen::VectorXd(centroid - gamma * (reflected - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }

    // shrink toward the best vertex
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + delta * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return NelderMeadResult{simplex[best], values[best], evals, converged};
}

}  // namespace sentinel::optim
