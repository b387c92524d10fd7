#include "sentinel/bazin/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sentinel::bazin {

double softplus(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

double bazin_flux(const BazinParams& p, double t) {
  const double dt = t - p.t0;
  const double fall = -dt / p.tau_fall;
  const double rise = -dt / p.tau_rise;
  // Direct form is exact at t0 (A/2 + B) and loses less precision; fall back to
  // log space only where an exponential could overflow.
  constexpr double kDirectLimit = 500.0;
  if (std::abs(fall) <= kDirectLimit && std::abs(rise) <= kDirectLimit) {
    return p.amplitude * (std::exp(fall) / (1.0 + std::exp(rise))) + p.baseline;
  }
  return p.amplitude * std::exp(fall - softplus(rise)) + p.baseline;
}

double peak_time(const BazinParams& p) {
  if (p.tau_fall <= p.tau_rise) return std::numeric_limits<double>::quiet_NaN();
  return p.t0 + p.tau_rise * std::log(p.tau_fall / p.tau_rise - 1.0);
}

}  // namespace sentinel::bazin
