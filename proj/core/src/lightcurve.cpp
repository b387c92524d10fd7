#include "sentinel/lightcurve.hpp"

#include <algorithm>
#include <cmath>

#include "sentinel/error.hpp"

namespace sentinel {

std::string_view to_string(Passband band) {
  return band == Passband::g ? "g" : "r";
}

Passband parse_passband(std::string_view text) {
  if (text == "g") return Passband::g;
  if (text == "r") return Passband::r;
  throw Error(ErrorCode::kUnknownPassband, "unknown passband '" + std::string(text) + "'");
}

bool observation_less(const Observation& a, const Observation& b) {
  if (a.time != b.time) return a.time < b.time;
  return a.passband < b.passband;
}

LightCurve::LightCurve(std::string transient_id, std::string class_label, std::vector<Observation> observations)
    : transient_id_(std::move(transient_id)),
      class_label_(std::move(class_label)),
      observations_(std::move(observations)) {
  const auto where = [this] { return "transient '" + transient_id_ + "'"; };
  if (transient_id_.empty()) throw Error(ErrorCode::kInvalidLightCurve, "empty transient_id");

  for (const auto& obs : observations_) {
    if (!std::isfinite(obs.time) || !std::isfinite(obs.flux) || !std::isfinite(obs.flux_err)) {
      throw Error(ErrorCode::kInvalidLightCurve, where() + ": non-finite value");
    }
    if (!(obs.flux_err > 0.0)) {
      throw Error(ErrorCode::kNonPositiveFluxError, where() + ": flux_err must be > 0");
    }
    if (obs.time < kWindowStart || obs.time > kWindowEnd) {
      throw Error(ErrorCode::kTimeOutOfRange, where() + ": time outside [-70, 80]");
    }
  }

  std::stable_sort(observations_.begin(), observations_.end(), observation_less);
  const auto dup = std::adjacent_find(observations_.begin(), observations_.end(),
                                      [](const Observation& a, const Observation& b) {
                                        return a.time == b.time && a.passband == b.passband;
                                      });
  if (dup != observations_.end()) {
    throw Error(ErrorCode::kDuplicateObservation,
                where() + ": duplicate observation at time " + std::to_string(dup->time) + " in " +
                    std::string(to_string(dup->passband)));
  }

  if (observations_.empty() || observations_.back().time < 0.0) {
    throw Error(ErrorCode::kInvalidLightCurve, where() + ": no observation at or after trigger");
  }
  for (Passband band : kPassbands) {
    if (count(band) == 0) {
      throw Error(ErrorCode::kInvalidLightCurve,
                  where() + ": passband " + std::string(to_string(band)) + " absent");
    }
  }
}

std::size_t LightCurve::count(Passband band) const {
  return static_cast<std::size_t>(std::count_if(observations_.begin(), observations_.end(),
                                                 [band](const Observation& o) { return o.passband == band; }));
}

std::size_t PartialLightCurve::count(Passband band) const {
  return static_cast<std::size_t>(std::count_if(observations_.begin(), observations_.end(),
                                                 [band](const Observation& o) { return o.passband == band; }));
}

bool PartialLightCurve::insufficient(std::size_t min_per_band) const {
  return std::any_of(kPassbands.begin(), kPassbands.end(),
                     [&](Passband band) { return count(band) < min_per_band; });
}

namespace {

void check_horizon(double horizon) {
  if (!(horizon >= kWindowStart && horizon <= kWindowEnd)) {
    throw Error(ErrorCode::kHorizonOutOfRange, "horizon " + std::to_string(horizon) + " outside [-70, 80]");
  }
}

std::span<const Observation> prefix_until(std::span<const Observation> obs, double horizon) {
  const auto end = std::upper_bound(obs.begin(), obs.end(), horizon,
                                    [](double t, const Observation& o) { return t < o.time; });
  return obs.first(static_cast<std::size_t>(end - obs.begin()));
}

}  // namespace

PartialLightCurve slice_until(const LightCurve& lc, double horizon) {
  check_horizon(horizon);
  return PartialLightCurve(lc, horizon, prefix_until(lc.observations(), horizon));
}

PartialLightCurve slice_until(const PartialLightCurve& plc, double horizon) {
  check_horizon(horizon);
  return PartialLightCurve(plc.source(), std::min(horizon, plc.horizon()),
                           prefix_until(plc.observations(), horizon));
}

Dataset::Dataset(std::vector<LightCurve> light_curves) : light_curves_(std::move(light_curves)) {}

std::set<std::string> Dataset::class_labels() const {
  std::set<std::string> labels;
  for (const auto& lc : light_curves_) labels.insert(lc.class_label());
  return labels;
}

std::vector<const LightCurve*> Dataset::of_class(std::string_view class_label) const {
  std::vector<const LightCurve*> out;
  for (const auto& lc : light_curves_) {
    if (lc.class_label() == class_label) out.push_back(&lc);
  }
  return out;
}

const LightCurve* Dataset::find(std::string_view transient_id) const {
  for (const auto& lc : light_curves_) {
    if (lc.transient_id() == transient_id) return &lc;
  }
  return nullptr;
}

std::size_t Dataset::n_time_steps(double cadence_days) {
  return static_cast<std::size_t>(std::floor((kWindowEnd - kWindowStart) / cadence_days + 1e-9)) + 1;
}

}  // namespace sentinel
