#include "sentinel/lightcurve_io.hpp"

#include <algorithm>
#include <array>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "sentinel/error.hpp"
#include "sentinel/text_io.hpp"

namespace sentinel {
namespace {

using nlohmann::json;

struct PendingCurve {
  std::string class_label;
  std::vector<Observation> observations;
  bool unsorted = false;
};

void warn(std::vector<std::string>* warnings, const std::string& message) {
  if (warnings != nullptr) {
    warnings->push_back(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

Dataset finish(std::vector<std::string>& order, std::map<std::string, PendingCurve>& pending,
               std::vector<std::string>* warnings) {
  std::vector<LightCurve> curves;
  curves.reserve(order.size());
  for (const auto& id : order) {
    auto& p = pending.at(id);
    if (p.unsorted) warn(warnings, "transient '" + id + "': rows not sorted by (time, passband); sorted on load");
    curves.emplace_back(id, std::move(p.class_label), std::move(p.observations));
  }
  return Dataset(std::move(curves));
}

void append(std::vector<std::string>& order, std::map<std::string, PendingCurve>& pending, const std::string& id,
            const std::string& label, const Observation& obs, const std::string& where) {
  auto [it, inserted] = pending.try_emplace(id);
  auto& p = it->second;
  if (inserted) {
    order.push_back(id);
    p.class_label = label;
  } else if (p.class_label != label) {
    throw Error(ErrorCode::kParseError, where + ": class_label changes within transient '" + id + "'");
  }
  if (!p.observations.empty() && observation_less(obs, p.observations.back())) p.unsorted = true;
  p.observations.push_back(obs);
}

Observation checked_observation(double time, std::string_view band, double flux, double flux_err,
                                const std::string& where) {
  Observation obs;
  obs.time = time;
  obs.flux = flux;
  obs.flux_err = flux_err;
  try {
    obs.passband = parse_passband(band);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnknownPassband, where + ": unknown passband '" + std::string(band) + "'");
  }
  if (!(flux_err > 0.0)) {
    throw Error(ErrorCode::kNonPositiveFluxError, where + ": flux_err = " + text::format_double(flux_err) + " must be > 0");
  }
  if (time < kWindowStart || time > kWindowEnd) {
    throw Error(ErrorCode::kTimeOutOfRange, where + ": time " + text::format_double(time) + " outside [-70, 80]");
  }
  return obs;
}

Dataset load_csv(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  const auto lines = text::read_lines(path);
  if (lines.empty()) throw Error(ErrorCode::kMissingColumn, path.string() + ": empty file, header required");

  static constexpr std::array<const char*, 6> kColumns{"transient_id", "class_label", "time",
                                                       "passband",     "flux",        "flux_err"};
  const auto header = text::split(lines.front());
  std::array<std::size_t, 6> col{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto it = std::find(header.begin(), header.end(), std::string_view(kColumns[c]));
    if (it == header.end()) {
      throw Error(ErrorCode::kMissingColumn, path.string() + ": missing column '" + kColumns[c] + "'");
    }
    col[c] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::string> order;
  std::map<std::string, PendingCurve> pending;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = path.filename().string() + " row " + std::to_string(i + 1);
    const auto fields = text::split(lines[i]);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError, where + ": expected " + std::to_string(header.size()) + " fields");
    }
    const auto obs = checked_observation(text::parse_double(fields[col[2]], where + " time"), fields[col[3]],
                                         text::parse_double(fields[col[4]], where + " flux"),
                                         text::parse_double(fields[col[5]], where + " flux_err"), where);
    append(order, pending, std::string(fields[col[0]]), std::string(fields[col[1]]), obs, where);
  }
  return finish(order, pending, warnings);
}

Dataset load_json(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text::read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kParseError, path.string() + ": top level must be an array");

  std::vector<std::string> order;
  std::map<std::string, PendingCurve> pending;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = path.filename().string() + " curve " + std::to_string(i);
    for (const char* key : {"transient_id", "class_label", "observations"}) {
      if (!item.contains(key)) throw Error(ErrorCode::kMissingColumn, where + ": missing key '" + key + "'");
    }
    const auto id = item.at("transient_id").get<std::string>();
    const auto label = item.at("class_label").get<std::string>();
    const auto& rows = item.at("observations");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto& row = rows[j];
      const std::string row_where = where + " observation " + std::to_string(j);
      for (const char* key : {"time", "passband", "flux", "flux_err"}) {
        if (!row.contains(key)) throw Error(ErrorCode::kMissingColumn, row_where + ": missing key '" + key + "'");
      }
      const auto obs = checked_observation(row.at("time").get<double>(), row.at("passband").get<std::string>(),
                                           row.at("flux").get<double>(), row.at("flux_err").get<double>(),
                                           row_where);
      append(order, pending, id, label, obs, row_where);
    }
    if (rows.empty()) throw Error(ErrorCode::kInvalidLightCurve, where + ": no observations");
  }
  return finish(order, pending, warnings);
}

}  // namespace

DatasetFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? DatasetFormat::kJson : DatasetFormat::kCsv;
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, std::vector<std::string>* warnings) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::kIoError, "no such file: " + path.string());
  return format == DatasetFormat::kCsv ? load_csv(path, warnings) : load_json(path, warnings);
}

std::string dataset_to_csv(const Dataset& dataset) {
  std::string out = kDatasetCsvHeader;
  out += '\n';
  for (const auto& lc : dataset.light_curves()) {
    for (const auto& obs : lc.observations()) {
      out += lc.transient_id();
      out += ',';
      out += lc.class_label();
      out += ',';
      out += text::format_double(obs.time);
      out += ',';
      out += to_string(obs.passband);
      out += ',';
      out += text::format_double(obs.flux);
      out += ',';
      out += text::format_double(obs.flux_err);
      out += '\n';
    }
  }
  return out;
}

std::string dataset_to_json(const Dataset& dataset) {
  json doc = json::array();
  for (const auto& lc : dataset.light_curves()) {
    json rows = json::array();
    for (const auto& obs : lc.observations()) {
      rows.push_back({{"time", obs.time},
                      {"passband", std::string(to_string(obs.passband))},
                      {"flux", obs.flux},
                      {"flux_err", obs.flux_err}});
    }
    doc.push_back({{"transient_id", lc.transient_id()}, {"class_label", lc.class_label()}, {"observations", rows}});
  }
  return doc.dump(1) + "\n";
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path, DatasetFormat format) {
  for (const auto& lc : dataset.light_curves()) {
    const auto bad = [](const std::string& s) { return s.find_first_of(",\n\r") != std::string::npos; };
    if (format == DatasetFormat::kCsv && (bad(lc.transient_id()) || bad(lc.class_label()))) {
      throw Error(ErrorCode::kIoError, "identifier with comma or newline cannot be written as CSV: " + lc.transient_id());
    }
  }
  text::write_file_atomic(path, format == DatasetFormat::kCsv ? dataset_to_csv(dataset) : dataset_to_json(dataset));
}

}  // namespace sentinel
