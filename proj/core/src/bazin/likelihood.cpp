#include "sentinel/bazin/likelihood.hpp"

#include <cmath>
#include <string>

#include "sentinel/bazin/function.hpp"
#include "sentinel/error.hpp"

namespace sentinel::bazin {

BandSeries BandSeries::from(const PartialLightCurve& plc, Passband band) {
  BandSeries s;
  s.band = band;
  for (const auto& obs : plc.observations()) {
    if (obs.passband != band) continue;
    s.time.push_back(obs.time);
    s.flux.push_back(obs.flux);
    s.meas_var.push_back(obs.flux_err * obs.flux_err);
  }
  return s;
}

double log_likelihood(const BazinParams& p, const BandSeries& data) {
  constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)
  const double int_var = p.amplitude * p.amplitude * p.sigma_int * p.sigma_int;
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double var = int_var + data.meas_var[i];
    const double resid = data.flux[i] - bazin_flux(p, data.time[i]);
    total += -0.5 * (kLog2Pi + std::log(var) + resid * resid / var);
  }
  return total;
}

double log_likelihood(const BazinParams& p, const PartialLightCurve& plc, Passband band) {
  const auto data = BandSeries::from(plc, band);
  if (data.empty()) {
    throw Error(ErrorCode::kInsufficientData, "no observations in passband " + std::string(to_string(band)) +
                                                  " up to T=" + std::to_string(plc.horizon()));
  }
  return log_likelihood(p, data);
}

}  // namespace sentinel::bazin
