#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/bazin/params.hpp"
#include "sentinel/lightcurve.hpp"
#include "sentinel/rng.hpp"

namespace sentinel::synthgen {

enum class Shape { kBazin, kDoublePeak, kPlateau, kLinearRise, kFlatAgnLike };

std::string_view to_string(Shape shape);
Shape parse_shape(std::string_view text);  // throws kInvalidTemplate

// Extra knobs for the non-Bazin morphologies.
struct ShapeParams {
  double peak_separation = 30.0;   // double_peak: days between the two bumps
  double second_peak_ratio = 0.8;  // double_peak: second amplitude / first
  double plateau_days = 40.0;      // plateau: flat segment inserted at peak
  double rise_days = 60.0;         // linear_rise: days to climb by A
  double agn_sigma = 10.0;         // flat_agn_like: stationary std of the level, flux units
  double agn_tau = 20.0;           // flat_agn_like: damping timescale, days
};

/// A synthetic transient class. Parameters are drawn per passband from a
/// Gaussian over the transformed Bazin vector (log A, B, t0, log tau_fall,
/// log tau_rise, log sigma_int).
struct ClassTemplate {
  std::string name;
  Shape shape = Shape::kBazin;
  std::array<bazin::Vector6, kNumPassbands> param_mean{bazin::Vector6::Zero(), bazin::Vector6::Zero()};
  // Symmetric positive semi-definite; an all-zero matrix gives the mean exactly.
  std::array<bazin::Matrix6, kNumPassbands> param_cov{bazin::Matrix6::Zero(), bazin::Matrix6::Zero()};
  double cadence_days = 3.0;
  double noise_floor = 1.0;
  double noise_scale = 0.05;
  ShapeParams shape_params;

  void validate() const;  // throws kInvalidTemplate
};

struct GenSpec {
  std::vector<ClassTemplate> templates;
  std::size_t n_per_class = 10;
  std::uint64_t seed = 0;
  double window_start = kWindowStart;
  double window_end = kWindowEnd;
  double dropout_prob = 0.0;  // chance an epoch is lost in both passbands
  double jitter_days = 0.25;  // uniform epoch jitter, at most 0.5

  void validate() const;  // throws kInvalidTemplate
};

using BandParams = std::array<bazin::BazinParams, kNumPassbands>;

/// Draw one parameter vector per passband. Draws below the sigma_int floor are
/// rejected; throws kRejectionBudgetExceeded after 1000 rejections.
BandParams sample_class_params(const ClassTemplate& tpl, Rng& rng);

/// Deterministic part of the latent flux for a shape (no intrinsic or stochastic terms).
double shape_flux(const ClassTemplate& tpl, const bazin::BazinParams& p, double t);

/// One light curve on a jittered cadence grid. Latent flux is the shape plus
/// A * sigma_int * N(0, 1) intrinsic scatter (and a damped random walk for
/// flat_agn_like); observed flux adds N(0, sigma_D^2) with
/// sigma_D = noise_floor + noise_scale * |latent|. Epoch dropout that leaves an
/// invalid curve is retried on a fresh substream up to 10 times, then throws
/// kEmptyAfterDropout.
LightCurve generate_lightcurve(const ClassTemplate& tpl, const BandParams& params, const GenSpec& spec, Rng& rng,
                               std::string transient_id);

struct GeneratedCurve {
  LightCurve light_curve;
  BandParams truth;
};

/// n_per_class curves per template with their true parameters. Each curve uses
/// its own seed-derived substream.
std::vector<GeneratedCurve> generate_population_with_truth(const GenSpec& spec);

Dataset generate_population(const GenSpec& spec);

std::string transient_name(std::string_view class_name, std::size_t index);

}  // namespace sentinel::synthgen
