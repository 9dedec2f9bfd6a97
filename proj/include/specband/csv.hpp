#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "specband/series.hpp"

namespace specband {

/// Header plus string cells. No quoting; cells are trimmed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::invalid_argument when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv_table(const std::filesystem::path& path);

/// Which columns hold the timestamp and the value. Empty names select the
/// first and second columns respectively.
struct CsvSchema {
  std::string time_column;
  std::string value_column;
  std::string unit;
};

/// Reads one series. Errors: missing file (IoError), missing column,
/// empty or non-numeric cell, unsorted or duplicate timestamps
/// (std::invalid_argument).
TimeSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Reads every non-time column as its own series, in file order.
std::vector<std::pair<std::string, TimeSeries>> load_csv_columns(const std::filesystem::path& path,
                                                                 const std::string& time_column = {});

/// Writes (timestamp, value) rows using the shortest decimal form that
/// round-trips each double exactly.
void write_csv(const std::filesystem::path& path, const TimeSeries& series,
               const std::string& time_name = "t", const std::string& value_name = "v");

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Parses a decimal number; throws std::invalid_argument on junk.
double parse_double(const std::string& text);

/// Writes content to path.tmp and renames it over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace specband
