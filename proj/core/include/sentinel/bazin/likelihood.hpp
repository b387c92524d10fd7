#pragma once

#include <cstddef>
#include <vector>

#include "sentinel/bazin/params.hpp"
#include "sentinel/lightcurve.hpp"

namespace sentinel::bazin {

/// One passband of a partial light curve, unpacked into contiguous arrays for
/// the likelihood hot loop.
struct BandSeries {
  Passband band = Passband::g;
  std::vector<double> time;
  std::vector<double> flux;
  std::vector<double> meas_var;  // sigma_D^2

  static BandSeries from(const PartialLightCurve& plc, Passband band);
  std::size_t size() const { return time.size(); }
  bool empty() const { return time.empty(); }
};

/// Gaussian log-likelihood of the observations given the Bazin parameters, with
/// per-point variance A^2 sigma_int^2 + sigma_D^2. The normalisation term is
/// kept because the variance depends on the parameters. Empty series give 0.
double log_likelihood(const BazinParams& p, const BandSeries& data);

/// Throws kInsufficientData when the passband has no observations.
double log_likelihood(const BazinParams& p, const PartialLightCurve& plc, Passband band);

}  // namespace sentinel::bazin
