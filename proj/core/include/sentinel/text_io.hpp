#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the CSV readers and writers.
namespace sentinel::text {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Strict full-string parse; throws kParseError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);

std::vector<std::string_view> split(std::string_view line, char delim = ',');

std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Write via a temporary sibling and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace sentinel::text
