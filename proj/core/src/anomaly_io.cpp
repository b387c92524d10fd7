#include "sentinel/anomaly_io.hpp"

#include <map>
#include <utility>

#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel::anomaly {
namespace {

using text::format_double;

std::vector<std::size_t> header_columns(const std::string& header_line, std::initializer_list<const char*> names,
                                        const std::filesystem::path& path) {
  const auto header = text::split(header_line);
  std::vector<std::size_t> cols;
  for (const char* name : names) {
    std::size_t i = 0;
    while (i < header.size() && header[i] != name) ++i;
    if (i == header.size()) throw Error(ErrorCode::kMissingColumn, path.string() + ": missing column '" + name + "'");
    cols.push_back(i);
  }
  return cols;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

}  // namespace

std::string scores_to_csv(const std::vector<AnomalyScoreSeries>& series) {
  std::string out = kScoreCsvHeader;
  out += '\n';
  for (const auto& s : series) {
    for (const auto& step : s.steps) {
      out += s.transient_id + ',' + s.model_class + ',' + format_double(step.time) + ',' +
             std::string(to_string(step.passband)) + ',' + format_double(step.chi2) + ',' + format_double(step.muspe) +
             ',' + format_double(step.running_score) + '\n';
    }
  }
  return out;
}

void write_scores(const std::vector<AnomalyScoreSeries>& series, const std::filesystem::path& path) {
  text::write_file_atomic(path, scores_to_csv(series));
}

std::vector<AnomalyScoreSeries> read_scores(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  if (lines.empty()) throw Error(ErrorCode::kMissingColumn, path.string() + ": empty score file");
  const auto col = header_columns(
      lines.front(), {"transient_id", "model_class", "time", "passband", "chi2", "muspe", "running_score"}, path);

  std::vector<AnomalyScoreSeries> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = text::split(lines[i]);
    const std::string where = path.filename().string() + " row " + std::to_string(i + 1);
    if (f.size() < col.size()) throw Error(ErrorCode::kParseError, where + ": too few fields");
    auto key = std::make_pair(std::string(f[col[0]]), std::string(f[col[1]]));
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      AnomalyScoreSeries s;
      s.transient_id = key.first;
      s.model_class = key.second;
      out.push_back(std::move(s));
    }
    ScoredStep step;
    step.time = text::parse_double(f[col[2]], where + " time");
    step.passband = parse_passband(f[col[3]]);
    step.chi2 = text::parse_double(f[col[4]], where + " chi2");
    step.muspe = text::parse_double(f[col[5]], where + " muspe");
    step.running_score = text::parse_double(f[col[6]], where + " running_score");
    out[it->second].steps.push_back(step);
  }
  return out;
}

std::string failures_to_csv(const std::vector<AnomalyScoreSeries>& series) {
  std::string out = kFailureCsvHeader;
  out += '\n';
  for (const auto& s : series) {
    for (const auto& f : s.failures) {
      out += s.transient_id + ',' + s.model_class + ',' + format_double(f.horizon_time) + ',' +
             format_double(f.target_time) + ',' + std::string(to_string(f.passband)) + ',' + sanitize(f.reason) + '\n';
    }
  }
  return out;
}

std::string predictions_to_csv(const std::vector<PredictionRecord>& rows) {
  std::string out = kPredictionCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.transient_id + ',' + format_double(r.prediction.target_time) + ',' +
           std::string(to_string(r.prediction.passband)) + ',' + format_double(r.prediction.y) + ',' +
           format_double(r.prediction.sigma_y) + '\n';
  }
  return out;
}

void write_predictions(const std::vector<PredictionRecord>& rows, const std::filesystem::path& path) {
  text::write_file_atomic(path, predictions_to_csv(rows));
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  if (lines.empty()) throw Error(ErrorCode::kMissingColumn, path.string() + ": empty prediction file");
  const auto col = header_columns(lines.front(), {"transient_id", "time", "passband", "y", "sigma_y"}, path);
  std::vector<PredictionRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = text::split(lines[i]);
    const std::string where = path.filename().string() + " row " + std::to_string(i + 1);
    if (f.size() < col.size()) throw Error(ErrorCode::kParseError, where + ": too few fields");
    PredictionRecord r;
    r.transient_id = std::string(f[col[0]]);
    r.prediction.target_time = text::parse_double(f[col[1]], where + " time");
    r.prediction.passband = parse_passband(f[col[2]]);
    r.prediction.y = text::parse_double(f[col[3]], where + " y");
    r.prediction.sigma_y = text::parse_double(f[col[4]], where + " sigma_y");
    if (!(r.prediction.sigma_y > 0.0)) {
      throw Error(ErrorCode::kParseError, where + ": sigma_y must be > 0");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sentinel::anomaly
