#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sentinel/lightcurve.hpp"

namespace sentinel {

enum class DatasetFormat { kCsv, kJson };

inline constexpr const char* kDatasetCsvHeader = "transient_id,class_label,time,passband,flux,flux_err";

/// Picks the format from the file extension (".json" -> JSON, anything else -> CSV).
DatasetFormat format_for(const std::filesystem::path& path);

/// Load a dataset. Rows that arrive out of (time, passband) order are sorted and a
/// warning is appended to `warnings` (or printed to stderr when null).
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     std::vector<std::string>* warnings = nullptr);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path, DatasetFormat format);

std::string dataset_to_csv(const Dataset& dataset);
std::string dataset_to_json(const Dataset& dataset);

}  // namespace sentinel
