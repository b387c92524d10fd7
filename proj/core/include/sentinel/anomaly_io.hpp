#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/anomaly.hpp"
#include "sentinel/prediction.hpp"

namespace sentinel::anomaly {

inline constexpr const char* kScoreCsvHeader = "transient_id,model_class,time,passband,chi2,muspe,running_score";
inline constexpr const char* kPredictionCsvHeader = "transient_id,time,passband,y,sigma_y";
inline constexpr const char* kFailureCsvHeader = "transient_id,model_class,horizon_time,target_time,passband,reason";

std::string scores_to_csv(const std::vector<AnomalyScoreSeries>& series);
void write_scores(const std::vector<AnomalyScoreSeries>& series, const std::filesystem::path& path);

/// Reads the shared score schema back into series (grouped by transient and
/// model, in file order). class_label is left empty: the schema does not carry it.
std::vector<AnomalyScoreSeries> read_scores(const std::filesystem::path& path);

std::string failures_to_csv(const std::vector<AnomalyScoreSeries>& series);

/// One forecast row of the shared prediction file.
struct PredictionRecord {
  std::string transient_id;
  Prediction prediction;  // target_time, passband, y, sigma_y
};

std::string predictions_to_csv(const std::vector<PredictionRecord>& rows);
void write_predictions(const std::vector<PredictionRecord>& rows, const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

}  // namespace sentinel::anomaly
