#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentinel {

enum class Passband : std::uint8_t { g = 0, r = 1 };

inline constexpr std::array<Passband, 2> kPassbands{Passband::g, Passband::r};
inline constexpr std::size_t kNumPassbands = kPassbands.size();

// Modeled window, days relative to trigger.
inline constexpr double kWindowStart = -70.0;
inline constexpr double kWindowEnd = 80.0;

std::string_view to_string(Passband band);
Passband parse_passband(std::string_view text);  // throws kUnknownPassband
inline std::size_t index_of(Passband band) { return static_cast<std::size_t>(band); }

struct Observation {
  double time = 0.0;      // days since trigger
  double flux = 0.0;
  double flux_err = 1.0;  // sigma_D, strictly positive
  Passband passband = Passband::g;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Strict weak ordering by (time, passband); the storage order of every light curve.
bool observation_less(const Observation& a, const Observation& b);

/// One transient's multi-passband time series.
///
/// Immutable after construction. The constructor sorts by (time, passband) and
/// rejects non-positive flux errors, out-of-window times, duplicate
/// (time, passband) pairs, curves without a post-trigger observation, and
/// curves missing a passband.
class LightCurve {
 public:
  LightCurve(std::string transient_id, std::string class_label, std::vector<Observation> observations);

  const std::string& transient_id() const { return transient_id_; }
  const std::string& class_label() const { return class_label_; }
  std::span<const Observation> observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }
  std::size_t count(Passband band) const;

  friend bool operator==(const LightCurve&, const LightCurve&) = default;

 private:
  std::string transient_id_;
  std::string class_label_;
  std::vector<Observation> observations_;
};

/// Observations of a light curve with time <= horizon.
///
/// Because observations are time-sorted this is a prefix view; the source must
/// outlive the slice.
class PartialLightCurve {
 public:
  PartialLightCurve(const LightCurve& source, double horizon, std::span<const Observation> observations)
      : source_(&source), horizon_(horizon), observations_(observations) {}

  const LightCurve& source() const { return *source_; }
  double horizon() const { return horizon_; }
  std::span<const Observation> observations() const { return observations_; }
  bool empty() const { return observations_.empty(); }
  std::size_t count(Passband band) const;

  // Below the minimum-data threshold used by the posterior fit.
  bool insufficient(std::size_t min_per_band = 3) const;

 private:
  const LightCurve* source_;
  double horizon_;
  std::span<const Observation> observations_;
};

/// Restrict to observations with time <= horizon (inclusive). Throws kHorizonOutOfRange
/// when horizon lies outside the modeled window.
PartialLightCurve slice_until(const LightCurve& lc, double horizon);
PartialLightCurve slice_until(const PartialLightCurve& plc, double horizon);

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<LightCurve> light_curves);

  const std::vector<LightCurve>& light_curves() const { return light_curves_; }
  std::set<std::string> class_labels() const;
  std::vector<const LightCurve*> of_class(std::string_view class_label) const;
  const LightCurve* find(std::string_view transient_id) const;

  std::size_t n_transients() const { return light_curves_.size(); }
  static constexpr std::size_t n_passbands() { return kNumPassbands; }
  /// Steps of the regular 3-day grid spanning the modeled window.
  static std::size_t n_time_steps(double cadence_days = 3.0);

  bool empty() const { return light_curves_.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<LightCurve> light_curves_;
};

}  // namespace sentinel
