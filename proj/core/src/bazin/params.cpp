#include "sentinel/bazin/params.hpp"

#include <cmath>
#include <string>

#include "sentinel/error.hpp"

namespace sentinel::bazin {

bool BazinParams::valid() const {
  const bool finite = std::isfinite(amplitude) && std::isfinite(baseline) && std::isfinite(t0) &&
                      std::isfinite(tau_fall) && std::isfinite(tau_rise) && std::isfinite(sigma_int);
  return finite && amplitude > 0.0 && tau_fall > 0.0 && tau_rise > 0.0 && sigma_int > 0.0;
}

void BazinParams::validate() const {
  if (!valid()) {
    throw Error(ErrorCode::kInvalidParams,
                "Bazin parameters must be finite with A, tau_fall, tau_rise, sigma_int > 0 (A=" +
                    std::to_string(amplitude) + ", tau_fall=" + std::to_string(tau_fall) +
                    ", tau_rise=" + std::to_string(tau_rise) + ", sigma_int=" + std::to_string(sigma_int) + ")");
  }
}

double BazinParams::operator[](std::size_t i) const {
  switch (i) {
    case 0: return amplitude;
    case 1: return baseline;
    case 2: return t0;
    case 3: return tau_fall;
    case 4: return tau_rise;
    case 5: return sigma_int;
    default: throw Error(ErrorCode::kInvalidParams, "parameter index out of range");
  }
}

TransformedParams to_transformed(const BazinParams& p) {
  TransformedParams x;
  x[kLogAmplitude] = std::log(p.amplitude);
  x[kBaseline] = p.baseline;
  x[kT0] = p.t0;
  x[kLogTauFall] = std::log(p.tau_fall);
  x[kLogTauRise] = std::log(p.tau_rise);
  x[kLogSigmaInt] = std::log(p.sigma_int);
  return x;
}

BazinParams to_natural(const Vector6& x) {
  BazinParams p;
  p.amplitude = std::exp(x[kLogAmplitude]);
  p.baseline = x[kBaseline];
  p.t0 = x[kT0];
  p.tau_fall = std::exp(x[kLogTauFall]);
  p.tau_rise = std::exp(x[kLogTauRise]);
  p.sigma_int = std::exp(x[kLogSigmaInt]);
  return p;
}

BazinParams to_natural(const TransformedParams& x) { return to_natural(x.values); }

}  // namespace sentinel::bazin
