#pragma once

#include "sentinel/bazin/params.hpp"

namespace sentinel::bazin {

/// Bazin rise-and-decline flux at time t:
///
///   f(t) = A * exp(-(t - t0) / tau_fall) / (1 + exp(-(t - t0) / tau_rise)) + B
///
/// Far from t0, where an exponential could overflow, it switches to
/// A * exp(-(t - t0)/tau_fall - softplus(-(t - t0)/tau_rise)) + B.
double bazin_flux(const BazinParams& p, double t);

/// Time of maximum flux (only meaningful when tau_fall > tau_rise).
double peak_time(const BazinParams& p);

/// log(1 + exp(u)) without overflow.
double softplus(double u);

}  // namespace sentinel::bazin
