#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sentinel/bazin/function.hpp"
#include "sentinel/lightcurve.hpp"

namespace sentinel::fixtures {

// Noise-free Bazin curve sampled on a regular grid in both passbands.
inline LightCurve bazin_curve(const bazin::BazinParams& p, std::string id = "t0", std::string label = "c",
                              double start = -30.0, double stop = 60.0, double step = 3.0, double flux_err = 1.0) {
  std::vector<Observation> obs;
  for (double t = start; t <= stop + 1e-9; t += step) {
    for (Passband b : kPassbands) obs.push_back({t, bazin::bazin_flux(p, t), flux_err, b});
  }
  return LightCurve(std::move(id), std::move(label), std::move(obs));
}

inline LightCurve flat_curve(double level, std::string id, std::string label, double flux_err = 1.0) {
  std::vector<Observation> obs;
  for (double t = -30.0; t <= 60.0; t += 3.0) {
    for (Passband b : kPassbands) obs.push_back({t, level, flux_err, b});
  }
  return LightCurve(std::move(id), std::move(label), std::move(obs));
}

inline bazin::BazinParams typical_params() {
  bazin::BazinParams p;
  p.amplitude = 200.0;
  p.baseline = 3.0;
  p.t0 = 4.0;
  p.tau_fall = 25.0;
  p.tau_rise = 3.0;
  p.sigma_int = 0.01;
  return p;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sentinel_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sentinel::fixtures
