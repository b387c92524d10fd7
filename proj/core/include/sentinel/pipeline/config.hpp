#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/anomaly.hpp"
#include "sentinel/bazin/population.hpp"
#include "sentinel/bazin/sampler.hpp"
#include "sentinel/eval.hpp"
#include "sentinel/synthgen.hpp"

namespace sentinel::pipeline {

struct EvaluateSettings {
  std::vector<double> grid;                 // times at which AUC is tracked
  std::vector<eval::TimeSlice> muspe_slices;
  std::size_t max_bins = 100;
};

/// Everything a pipeline run needs. Relative paths in the file are resolved
/// against the directory holding the config.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  synthgen::GenSpec gen;
  double train_fraction = 0.8;
  std::vector<std::string> trained_classes;
  bazin::SamplerConfig sampler;
  std::size_t prior_draws = 1000;
  std::optional<std::uint64_t> sampler_seed;  // defaults to `seed`
  anomaly::ScoringOptions scoring;
  bazin::PriorBuildOptions priors;
  EvaluateSettings evaluate;
  std::map<std::string, std::filesystem::path> external_predictions;  // model class -> prediction CSV

  std::uint64_t predictor_seed() const { return sampler_seed.value_or(seed); }
};

/// Parse a YAML config. Errors are kConfigError with a "line N" prefix and the
/// offending key. `base_dir` anchors relative paths.
PipelineConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir);

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace sentinel::pipeline
