#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/eval.hpp"

namespace sentinel::eval {

inline constexpr const char* kRocCsvHeader = "anomaly_class,threshold,false_anomaly_rate,true_anomaly_rate";
inline constexpr const char* kAucTimeCsvHeader = "anomaly_class,time,auc";
inline constexpr const char* kHistogramCsvHeader = "label,passband,bin_lo,bin_hi,count";
inline constexpr const char* kHistogramSummaryCsvHeader = "label,passband,n,mean,rms";
inline constexpr const char* kSummaryCsvHeader = "anomaly_class,auc,n_normal,n_anomaly";

struct NamedRoc {
  std::string anomaly_class;
  RocResult roc;
  std::size_t n_normal = 0;
  std::size_t n_anomaly = 0;
};

std::string roc_to_csv(const std::vector<NamedRoc>& rocs);
std::string summary_to_csv(const std::vector<NamedRoc>& rocs);
std::string auc_time_to_csv(const std::vector<AucTimeSeries>& series);  // absent cells are left blank
std::string histograms_to_csv(const std::vector<HistogramSummary>& hists);
std::string histogram_summary_to_csv(const std::vector<HistogramSummary>& hists);

}  // namespace sentinel::eval
