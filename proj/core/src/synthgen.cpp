#include "sentinel/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

#include "sentinel/bazin/function.hpp"
#include "sentinel/error.hpp"

namespace sentinel::synthgen {
namespace {

using bazin::BazinParams;
using bazin::Matrix6;
using bazin::Vector6;

constexpr int kMaxRejections = 1000;
constexpr int kMaxDropoutRetries = 10;

// Symmetric square root with negative eigenvalues clamped to zero.
Matrix6 psd_sqrt(const Matrix6& cov) {
  if (cov.isZero(0.0)) return Matrix6::Zero();
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(cov);
  const Vector6 root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

double plateau_flux(const ClassTemplate& tpl, const BazinParams& p, double t) {
  const double t_peak = bazin::peak_time(p);
  const double anchor = std::isfinite(t_peak) ? t_peak : p.t0;
  const double length = tpl.shape_params.plateau_days;
  if (t <= anchor) return bazin::bazin_flux(p, t);
  if (t <= anchor + length) return bazin::bazin_flux(p, anchor);
  return bazin::bazin_flux(p, t - length);
}

}  // namespace

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::kBazin: return "bazin";
    case Shape::kDoublePeak: return "double_peak";
    case Shape::kPlateau: return "plateau";
    case Shape::kLinearRise: return "linear_rise";
    case Shape::kFlatAgnLike: return "flat_agn_like";
  }
  return "bazin";
}

Shape parse_shape(std::string_view text) {
  for (Shape s : {Shape::kBazin, Shape::kDoublePeak, Shape::kPlateau, Shape::kLinearRise, Shape::kFlatAgnLike}) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorCode::kInvalidTemplate, "unknown shape '" + std::string(text) + "'");
}

void ClassTemplate::validate() const {
  const auto fail = [this](const std::string& what) {
    throw Error(ErrorCode::kInvalidTemplate, "template '" + name + "': " + what);
  };
  if (name.empty()) throw Error(ErrorCode::kInvalidTemplate, "template without a name");
  if (!(cadence_days > 0.0)) fail("cadence_days must be > 0");
  if (!(noise_floor > 0.0)) fail("noise_floor must be > 0");
  if (!(noise_scale >= 0.0 && noise_scale < 1.0)) fail("noise_scale must be in [0, 1)");
  for (std::size_t b = 0; b < kNumPassbands; ++b) {
    if (!param_mean[b].allFinite() || !param_cov[b].allFinite()) fail("non-finite parameter moments");
    if (!param_cov[b].isApprox(param_cov[b].transpose()) && !param_cov[b].isZero(0.0)) fail("param_cov not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix6> eig(param_cov[b], Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff())) {
      fail("param_cov not positive semi-definite");
    }
  }
  const auto& sp = shape_params;
  if (shape == Shape::kDoublePeak && !(sp.second_peak_ratio > 0.0)) fail("second_peak_ratio must be > 0");
  if (shape == Shape::kPlateau && !(sp.plateau_days >= 0.0)) fail("plateau_days must be >= 0");
  if (shape == Shape::kLinearRise && !(sp.rise_days > 0.0)) fail("rise_days must be > 0");
  if (shape == Shape::kFlatAgnLike && !(sp.agn_sigma >= 0.0 && sp.agn_tau > 0.0)) fail("agn_sigma >= 0, agn_tau > 0");
}

void GenSpec::validate() const {
  if (n_per_class < 1) throw Error(ErrorCode::kInvalidTemplate, "n_per_class must be >= 1");
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) throw Error(ErrorCode::kInvalidTemplate, "dropout_prob must be in [0, 1)");
  if (!(jitter_days >= 0.0 && jitter_days <= 0.5)) throw Error(ErrorCode::kInvalidTemplate, "jitter_days must be in [0, 0.5]");
  if (!(window_start >= kWindowStart && window_end <= kWindowEnd && window_start < window_end)) {
    throw Error(ErrorCode::kInvalidTemplate, "time window must lie within [-70, 80]");
  }
  for (const auto& t : templates) t.validate();
}

BandParams sample_class_params(const ClassTemplate& tpl, Rng& rng) {
  std::normal_distribution<double> normal;
  BandParams out;
  for (std::size_t b = 0; b < kNumPassbands; ++b) {
    const Matrix6 root = psd_sqrt(tpl.param_cov[b]);
    int rejections = 0;
    while (true) {
      Vector6 z;
      for (Eigen::Index i = 0; i < 6; ++i) z[i] = normal(rng);
      const Vector6 x = tpl.param_mean[b] + root * z;
      const BazinParams p = bazin::to_natural(x);
      if (p.valid() && p.sigma_int >= bazin::kSigmaIntFloor) {
        out[b] = p;
        break;
      }
      if (++rejections > kMaxRejections) {
        throw Error(ErrorCode::kRejectionBudgetExceeded,
                    "template '" + tpl.name + "': more than 1000 rejected parameter draws");
      }
    }
  }
  return out;
}

double shape_flux(const ClassTemplate& tpl, const BazinParams& p, double t) {
  const auto& sp = tpl.shape_params;
  switch (tpl.shape) {
    case Shape::kBazin:
      return bazin::bazin_flux(p, t);
    case Shape::kDoublePeak: {
      BazinParams second = p;
      second.t0 += sp.peak_separation;
      second.amplitude *= sp.second_peak_ratio;
      second.baseline = 0.0;
      return bazin::bazin_flux(p, t) + bazin::bazin_flux(second, t);
    }
    case Shape::kPlateau:
      return plateau_flux(tpl, p, t);
    case Shape::kLinearRise:
      return p.baseline + p.amplitude * std::max(0.0, t - p.t0) / sp.rise_days;
    case Shape::kFlatAgnLike:
      return p.baseline;
  }
  return p.baseline;
}

LightCurve generate_lightcurve(const ClassTemplate& tpl, const BandParams& params, const GenSpec& spec, Rng& rng,
                               std::string transient_id) {
  const auto n_epochs =
      static_cast<std::size_t>(std::floor((spec.window_end - spec.window_start) / tpl.cadence_days + 1e-9)) + 1;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::uint64_t substream_seed = rng();

  for (int attempt = 0; attempt < kMaxDropoutRetries; ++attempt) {
    Rng local = make_stream(substream_seed, "epochs", static_cast<std::uint64_t>(attempt));
    std::vector<Observation> obs;
    obs.reserve(2 * n_epochs);
    std::array<double, kNumPassbands> agn_level{};
    std::array<double, kNumPassbands> last_time{};
    bool first = true;
    for (std::size_t k = 0; k < n_epochs; ++k) {
      const double jitter = spec.jitter_days * (2.0 * uniform(local) - 1.0);
      const double t = std::clamp(spec.window_start + static_cast<double>(k) * tpl.cadence_days + jitter,
                                  spec.window_start, spec.window_end);
      const bool dropped = uniform(local) < spec.dropout_prob;
      for (Passband band : kPassbands) {
        const auto b = index_of(band);
        const auto& p = params[b];
        double latent = shape_flux(tpl, p, t) + p.amplitude * p.sigma_int * normal(local);
        if (tpl.shape == Shape::kFlatAgnLike) {
          // Ornstein-Uhlenbeck level, advanced exactly between epochs.
          const double s = tpl.shape_params.agn_sigma;
          if (first) {
            agn_level[b] = s * normal(local);
          } else {
            const double decay = std::exp(-(t - last_time[b]) / tpl.shape_params.agn_tau);
            agn_level[b] = agn_level[b] * decay + s * std::sqrt(std::max(0.0, 1.0 - decay * decay)) * normal(local);
          }
          last_time[b] = t;
          latent += agn_level[b];
        }
        const double sigma_d = tpl.noise_floor + tpl.noise_scale * std::abs(latent);
        const double flux = latent + sigma_d * normal(local);
        if (!dropped) obs.push_back(Observation{t, flux, sigma_d, band});
      }
      first = false;
    }
    const bool has_post_trigger =
        std::any_of(obs.begin(), obs.end(), [](const Observation& o) { return o.time >= 0.0; });
    if (has_post_trigger && !obs.empty()) {
      return LightCurve(std::move(transient_id), tpl.name, std::move(obs));
    }
  }
  throw Error(ErrorCode::kEmptyAfterDropout,
              "transient '" + transient_id + "': no valid curve after " + std::to_string(kMaxDropoutRetries) +
                  " dropout retries");
}

std::string transient_name(std::string_view class_name, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05zu", index);
  return std::string(class_name) + "_" + buf;
}

std::vector<GeneratedCurve> generate_population_with_truth(const GenSpec& spec) {
  spec.validate();
  std::vector<GeneratedCurve> out;
  out.reserve(spec.templates.size() * spec.n_per_class);
  for (std::size_t c = 0; c < spec.templates.size(); ++c) {
    const auto& tpl = spec.templates[c];
    for (std::size_t i = 0; i < spec.n_per_class; ++i) {
      Rng rng = make_stream(spec.seed, "generate", fnv1a(tpl.name), i);
      const auto params = sample_class_params(tpl, rng);
      out.push_back(GeneratedCurve{generate_lightcurve(tpl, params, spec, rng, transient_name(tpl.name, i)), params});
    }
  }
  return out;
}

Dataset generate_population(const GenSpec& spec) {
  auto generated = generate_population_with_truth(spec);
  std::vector<LightCurve> curves;
  curves.reserve(generated.size());
  for (auto& g : generated) curves.push_back(std::move(g.light_curve));
  return Dataset(std::move(curves));
}

}  // namespace sentinel::synthgen
