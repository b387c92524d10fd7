#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace sentinel::bazin {

inline constexpr std::size_t kNumParams = 6;

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Lower bound on the intrinsic scatter; keeps the per-point variance away from zero.
inline constexpr double kSigmaIntFloor = 1e-4;

// Layout of the transformed (unconstrained) parameter vector.
enum ParamIndex : std::size_t {
  kLogAmplitude = 0,
  kBaseline = 1,
  kT0 = 2,
  kLogTauFall = 3,
  kLogTauRise = 4,
  kLogSigmaInt = 5,
};

inline constexpr std::array<std::string_view, kNumParams> kTransformedNames{
    "log_A", "B", "t0", "log_tau_fall", "log_tau_rise", "log_sigma_int"};
inline constexpr std::array<std::string_view, kNumParams> kNaturalNames{
    "A", "B", "t0", "tau_fall", "tau_rise", "sigma_int"};

/// Bazin model parameters in natural units.
struct BazinParams {
  double amplitude = 1.0;  // A, flux units
  double baseline = 0.0;   // B, flux units
  double t0 = 0.0;         // days
  double tau_fall = 1.0;   // days
  double tau_rise = 1.0;   // days
  double sigma_int = kSigmaIntFloor;

  bool valid() const;
  void validate() const;  // throws kInvalidParams

  double operator[](std::size_t i) const;

  friend bool operator==(const BazinParams&, const BazinParams&) = default;
};

/// Same parameters with the positive ones stored as natural logs, so a Gaussian
/// over this vector respects the positivity constraints.
struct TransformedParams {
  Vector6 values = Vector6::Zero();

  double& operator[](std::size_t i) { return values[static_cast<Eigen::Index>(i)]; }
  double operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
};

TransformedParams to_transformed(const BazinParams& p);
BazinParams to_natural(const TransformedParams& x);
BazinParams to_natural(const Vector6& x);

}  // namespace sentinel::bazin
