#include "sentinel/bazin/prior.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel::bazin {
namespace {

using nlohmann::json;

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

}  // namespace

GaussianPrior::GaussianPrior() : GaussianPrior(Vector6::Zero(), Matrix6::Identity()) {}

GaussianPrior::GaussianPrior(const Vector6& mean, const Matrix6& cov) : mean_(mean), cov_(cov) {
  if (!mean.allFinite() || !cov.allFinite()) throw Error(ErrorCode::kInvalidPrior, "non-finite prior moments");
  if (!cov.isApprox(cov.transpose(), 1e-12)) throw Error(ErrorCode::kInvalidPrior, "covariance is not symmetric");
  Eigen::LLT<Matrix6> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidPrior, "covariance is not positive definite");
  }
  chol_ = llt.matrixL();
  log_norm_ = -0.5 * static_cast<double>(kNumParams) * kLog2Pi - chol_.diagonal().array().log().sum();
}

GaussianPrior GaussianPrior::diagonal(const Vector6& mean, const Vector6& sd) {
  return GaussianPrior(mean, Matrix6(sd.array().square().matrix().asDiagonal()));
}

double GaussianPrior::log_density(const Vector6& x) const {
  const Vector6 z = chol_.triangularView<Eigen::Lower>().solve(x - mean_);
  return log_norm_ - 0.5 * z.squaredNorm();
}

Vector6 GaussianPrior::draw(Rng& rng) const {
  std::normal_distribution<double> normal;
  Vector6 z;
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  return mean_ + chol_ * z;
}

ClassPrior ClassPrior::same_for_all_bands(std::string name, const GaussianPrior& prior) {
  ClassPrior out;
  out.class_name = std::move(name);
  out.bands.fill(prior);
  return out;
}

ClassPrior broad_hyper_prior() {
  Vector6 mean;
  mean << std::log(100.0), 0.0, 0.0, std::log(20.0), std::log(3.0), std::log(0.02);
  Vector6 sd;
  sd << 2.0, 50.0, 30.0, 1.5, 1.5, 2.0;
  return ClassPrior::same_for_all_bands("hyper", GaussianPrior::diagonal(mean, sd));
}

std::string prior_to_json(const ClassPrior& prior) {
  json doc;
  doc["class_name"] = prior.class_name;
  doc["transform"] = {{"parameters", json::array()}, {"log_transformed", {"A", "tau_fall", "tau_rise", "sigma_int"}}};
  for (auto name : kTransformedNames) doc["transform"]["parameters"].push_back(std::string(name));
  for (Passband band : kPassbands) {
    const auto& g = prior.band(band);
    json mean = json::array();
    json cov = json::array();
    for (Eigen::Index i = 0; i < 6; ++i) {
      mean.push_back(g.mean()[i]);
      json row = json::array();
      for (Eigen::Index j = 0; j < 6; ++j) row.push_back(g.cov()(i, j));
      cov.push_back(row);
    }
    doc["passbands"][std::string(to_string(band))] = {{"mean", mean}, {"cov", cov}};
  }
  return doc.dump(2) + "\n";
}

ClassPrior prior_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    ClassPrior prior;
    prior.class_name = doc.at("class_name").get<std::string>();
    const auto& params = doc.at("transform").at("parameters");
    if (params.size() != kNumParams) throw Error(ErrorCode::kInvalidPrior, "expected 6 transformed parameters");
    for (std::size_t i = 0; i < kNumParams; ++i) {
      if (params[i].get<std::string>() != kTransformedNames[i]) {
        throw Error(ErrorCode::kInvalidPrior, "unexpected parameter order at index " + std::to_string(i));
      }
    }
    for (Passband band : kPassbands) {
      const auto& node = doc.at("passbands").at(std::string(to_string(band)));
      Vector6 mean;
      Matrix6 cov;
      for (Eigen::Index i = 0; i < 6; ++i) {
        mean[i] = node.at("mean").at(static_cast<std::size_t>(i)).get<double>();
        for (Eigen::Index j = 0; j < 6; ++j) {
          cov(i, j) = node.at("cov").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
        }
      }
      prior.bands[index_of(band)] = GaussianPrior(mean, cov);
    }
    return prior;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidPrior, std::string("malformed prior JSON: ") + e.what());
  }
}

void save_prior(const ClassPrior& prior, const std::filesystem::path& path) {
  text::write_file_atomic(path, prior_to_json(prior));
}

ClassPrior load_prior(const std::filesystem::path& path) { return prior_from_json(text::read_file(path)); }

}  // namespace sentinel::bazin
