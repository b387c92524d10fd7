#include "sentinel/eval_io.hpp"

#include "sentinel/text_io.hpp"

namespace sentinel::eval {
namespace {

using text::format_double;

std::string with_header(const char* header) {
  std::string out = header;
  out += '\n';
  return out;
}

}  // namespace

std::string roc_to_csv(const std::vector<NamedRoc>& rocs) {
  std::string out = with_header(kRocCsvHeader);
  for (const auto& r : rocs) {
    for (std::size_t i = 0; i < r.roc.thresholds.size(); ++i) {
      out += r.anomaly_class + ',' + format_double(r.roc.thresholds[i]) + ',' +
             format_double(r.roc.false_anomaly_rate[i]) + ',' + format_double(r.roc.true_anomaly_rate[i]) + '\n';
    }
  }
  return out;
}

std::string summary_to_csv(const std::vector<NamedRoc>& rocs) {
  std::string out = with_header(kSummaryCsvHeader);
  for (const auto& r : rocs) {
    out += r.anomaly_class + ',' + format_double(r.roc.auc) + ',' + std::to_string(r.n_normal) + ',' +
           std::to_string(r.n_anomaly) + '\n';
  }
  return out;
}

std::string auc_time_to_csv(const std::vector<AucTimeSeries>& series) {
  std::string out = with_header(kAucTimeCsvHeader);
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      out += s.anomaly_class + ',' + format_double(s.times[i]) + ',';
      if (s.auc[i]) out += format_double(*s.auc[i]);
      out += '\n';
    }
  }
  return out;
}

std::string histograms_to_csv(const std::vector<HistogramSummary>& hists) {
  std::string out = with_header(kHistogramCsvHeader);
  for (const auto& h : hists) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      out += h.label + ',' + h.passband + ',' + format_double(h.bin_edges[i]) + ',' + format_double(h.bin_edges[i + 1]) +
             ',' + std::to_string(h.counts[i]) + '\n';
    }
  }
  return out;
}

std::string histogram_summary_to_csv(const std::vector<HistogramSummary>& hists) {
  std::string out = with_header(kHistogramSummaryCsvHeader);
  for (const auto& h : hists) {
    out += h.label + ',' + h.passband + ',' + std::to_string(h.n) + ',' + format_double(h.mean) + ',' +
           format_double(h.rms) + '\n';
  }
  return out;
}

}  // namespace sentinel::eval
