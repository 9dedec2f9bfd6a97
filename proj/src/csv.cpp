#include "specband/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "specband/error.hpp"

namespace specband {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::size_t resolve_column(const CsvTable& table, const std::string& name, std::size_t fallback) {
  if (name.empty()) {
    if (fallback >= table.header.size())
      throw std::invalid_argument("csv: expected at least " + std::to_string(fallback + 1) + " columns");
    return fallback;
  }
  return table.column(name);
}

std::vector<std::int64_t> parse_stamps(const CsvTable& table, std::size_t col, TimeKind& kind) {
  std::vector<std::int64_t> stamps;
  stamps.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (col >= row.size() || row[col].empty())
      throw std::invalid_argument("csv: missing timestamp at data row " + std::to_string(r + 1));
    const auto parsed = parse_timestamp(row[col]);
    if (r == 0) kind = parsed.kind;
    else if (parsed.kind != kind)
      throw std::invalid_argument("csv: mixed timestamp formats at data row " + std::to_string(r + 1));
    stamps.push_back(parsed.value);
  }
  return stamps;
}

std::vector<double> parse_values(const CsvTable& table, std::size_t col) {
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (col >= row.size() || row[col].empty())
      throw std::invalid_argument("csv: missing value in column '" + table.header[col] + "' at data row " +
                                  std::to_string(r + 1));
    try {
      values.push_back(parse_double(row[col]));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("csv: non-numeric value '" + row[col] + "' in column '" + table.header[col] +
                                  "' at data row " + std::to_string(r + 1));
    }
  }
  return values;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("csv: column '" + name + "' not found");
}

CsvTable read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!have_header) {
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      if (trim(line).empty()) continue;
      table.header = split(line);
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    table.rows.push_back(split(line));
  }
  if (!have_header) throw std::invalid_argument("csv: '" + path.string() + "' has no header row");
  return table;
}

TimeSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  const CsvTable table = read_csv_table(path);
  const std::size_t tcol = resolve_column(table, schema.time_column, 0);
  const std::size_t vcol = resolve_column(table, schema.value_column, 1);
  TimeKind kind = TimeKind::Index;
  auto stamps = parse_stamps(table, tcol, kind);
  auto values = parse_values(table, vcol);
  return TimeSeries(std::move(stamps), std::move(values), kind, schema.unit);
}

std::vector<std::pair<std::string, TimeSeries>> load_csv_columns(const std::filesystem::path& path,
                                                                 const std::string& time_column) {
  const CsvTable table = read_csv_table(path);
  const std::size_t tcol = resolve_column(table, time_column, 0);
  TimeKind kind = TimeKind::Index;
  const auto stamps = parse_stamps(table, tcol, kind);
  std::vector<std::pair<std::string, TimeSeries>> out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == tcol) continue;
    out.emplace_back(table.header[c], TimeSeries(stamps, parse_values(table, c), kind));
  }
  if (out.empty()) throw std::invalid_argument("csv: no value columns in '" + path.string() + "'");
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, p);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty number");
  const char* first = t.data();
  if (*first == '+') ++first;
  double v = 0.0;
  auto [p, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw std::invalid_argument("non-numeric '" + t + "'");
  return v;
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series, const std::string& time_name,
               const std::string& value_name) {
  std::string out = time_name + "," + value_name + "\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += format_timestamp(series.stamps()[i], series.kind());
    out += ',';
    out += format_double(series[i]);
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace specband
