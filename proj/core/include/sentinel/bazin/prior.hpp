#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Cholesky>

#include "sentinel/bazin/params.hpp"
#include "sentinel/lightcurve.hpp"
#include "sentinel/rng.hpp"

namespace sentinel::bazin {

/// Multivariate normal over the transformed parameter vector.
class GaussianPrior {
 public:
  GaussianPrior();
  /// Throws kInvalidPrior unless cov is symmetric and Cholesky-factorisable.
  GaussianPrior(const Vector6& mean, const Matrix6& cov);

  static GaussianPrior diagonal(const Vector6& mean, const Vector6& sd);

  const Vector6& mean() const { return mean_; }
  const Matrix6& cov() const { return cov_; }
  const Matrix6& chol() const { return chol_; }

  double log_density(const Vector6& x) const;
  Vector6 draw(Rng& rng) const;

 private:
  Vector6 mean_;
  Matrix6 cov_;
  Matrix6 chol_;  // lower triangular
  double log_norm_ = 0.0;
};

/// Per-passband Gaussian prior for one trained transient class.
struct ClassPrior {
  std::string class_name;
  std::array<GaussianPrior, kNumPassbands> bands;

  const GaussianPrior& band(Passband b) const { return bands[index_of(b)]; }

  static ClassPrior same_for_all_bands(std::string name, const GaussianPrior& prior);
};

/// Wide, fixed prior used for the per-curve point fits that seed a class prior.
ClassPrior broad_hyper_prior();

std::string prior_to_json(const ClassPrior& prior);
ClassPrior prior_from_json(std::string_view text);
void save_prior(const ClassPrior& prior, const std::filesystem::path& path);
ClassPrior load_prior(const std::filesystem::path& path);

}  // namespace sentinel::bazin
