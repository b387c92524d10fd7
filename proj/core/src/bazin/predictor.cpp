#include "sentinel/bazin/predict.hpp"

#include <bit>
#include <string>

#include "sentinel/error.hpp"

namespace sentinel::bazin {

BazinPredictor::BazinPredictor(ClassPrior prior, BazinPredictorOptions options)
    : prior_(std::move(prior)), options_(std::move(options)) {}

Prediction BazinPredictor::predict(const PartialLightCurve& history, Passband band, double target_time) const {
  Rng rng = make_stream(options_.seed, "bazin_predict", fnv1a(history.source().transient_id()) ^ fnv1a(prior_.class_name),
                        index_of(band), std::bit_cast<std::uint64_t>(history.horizon()));
  const auto data = BandSeries::from(history, band);
  try {
    if (data.size() < options_.sampler.min_observations) {
      const auto draws = sample_prior(prior_.band(band), band, options_.prior_draws, rng);
      return bazin::predict(draws, target_time, band, rng);
    }
    const auto samples = sample_posterior(data, prior_.band(band), options_.sampler, rng);
    return bazin::predict(samples, target_time, band, rng);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kModelFailure) throw;
    throw Error(ErrorCode::kModelFailure, std::string("bazin model '") + prior_.class_name + "': " + e.what());
  }
}

}  // namespace sentinel::bazin
