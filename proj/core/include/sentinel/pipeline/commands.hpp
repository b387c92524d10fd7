#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/anomaly.hpp"
#include "sentinel/eval_io.hpp"
#include "sentinel/lightcurve.hpp"
#include "sentinel/pipeline/config.hpp"
#include "sentinel/prediction.hpp"

namespace sentinel::pipeline {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,      // bad config or missing inputs
  kExitFitFailure = 3,  // a class exceeded the prior-fit failure budget
  kExitScoreFailure = 4,
};

inline constexpr double kMaxCurveFailureRate = 0.05;

struct CommandOptions {
  std::filesystem::path config;
  std::string model = "bazin";  // "bazin" or "external"
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
};

/// Load the config, apply overrides and dispatch. Never throws: errors are
/// printed to `err` and mapped to an exit code.
int run_command(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err);

int cmd_generate(const PipelineConfig& cfg, std::ostream& log);
int cmd_fit_priors(const PipelineConfig& cfg, std::size_t jobs, std::ostream& log);
int cmd_score(const PipelineConfig& cfg, const std::string& model, std::size_t jobs, std::ostream& log);
int cmd_evaluate(const PipelineConfig& cfg, const std::string& model, std::ostream& log);

struct Split {
  Dataset train;
  Dataset test;
};

/// Per class, round(train_fraction * n) curves go to train. Membership comes
/// from a seeded random key per curve; both halves keep the input order.
Split split_dataset(const Dataset& data, double train_fraction, std::uint64_t seed);

/// Score every (model, curve) pair, model-major. A pair that throws becomes a
/// series with no steps and one failure.
std::vector<anomaly::AnomalyScoreSeries> score_all(const Dataset& data, const std::vector<const Predictor*>& models,
                                                   const anomaly::ScoringOptions& options, std::size_t jobs);

struct EvaluationResult {
  std::vector<std::string> normal_classes;
  std::vector<std::string> anomaly_classes;
  std::vector<eval::NamedRoc> rocs;                  // one per anomaly class
  std::vector<eval::AucTimeSeries> auc_time;         // one per anomaly class
  std::vector<eval::HistogramSummary> score_hists;   // per model/class, then pooled/class
  std::vector<eval::HistogramSummary> muspe_hists;   // per model/class and slice
};

/// Metrics from labelled score series. Normal classes are the model classes;
/// every other labelled class is an anomaly class. Transients are pooled over
/// models by their minimum running score.
EvaluationResult evaluate_scores(const std::vector<anomaly::AnomalyScoreSeries>& series,
                                 const std::vector<std::string>& normal_classes, const EvaluateSettings& settings);

void write_evaluation(const EvaluationResult& result, const std::filesystem::path& dir);

std::filesystem::path prior_path(const PipelineConfig& cfg, const std::string& class_name);
std::filesystem::path scores_path(const PipelineConfig& cfg, const std::string& model);
std::filesystem::path failures_path(const PipelineConfig& cfg, const std::string& model);

}  // namespace sentinel::pipeline
