#include "tpc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tpc/errors.hpp"

namespace tpc {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ArgumentError("csv table needs at least one column");
  for (const auto& c : columns_) {
    if (c.find_first_of(",\n\r") != std::string::npos) {
      throw ArgumentError("csv column name contains a separator: " + c);
    }
  }
}

void CsvTable::add_row(std::vector<CsvValue> row) {
  if (row.size() != columns_.size()) {
    throw ArgumentError("csv row has " + std::to_string(row.size()) + " values, expected " +
                        std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

void CsvTable::add_record(const std::vector<std::pair<std::string, CsvValue>>& record) {
  if (record.size() != columns_.size()) {
    throw ArgumentError("csv record does not share the table's column set");
  }
  std::vector<CsvValue> row;
  row.reserve(record.size());
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (record[i].first != columns_[i]) {
      throw ArgumentError("csv record column '" + record[i].first + "' where '" + columns_[i] +
                          "' expected");
    }
    row.push_back(record[i].second);
  }
  rows_.push_back(std::move(row));
}

std::string format_real(double v) {
  if (!std::isfinite(v)) throw SerializationError("refusing to serialize non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_value(const CsvValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
  const auto& s = std::get<std::string>(v);
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw SerializationError("csv text value contains a separator: " + s);
  }
  return s;
}

}  // namespace

std::string to_csv_string(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out += ',';
    out += table.columns()[i];
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string text = to_csv_string(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) parts.push_back(cur);
  if (!line.empty() && line.back() == ',') parts.emplace_back();
  return parts;
}

CsvValue parse_cell(const std::string& s) {
  std::int64_t i = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), i);
  if (r.ec == std::errc{} && r.ptr == s.data() + s.size() && !s.empty()) return i;
  double d = 0;
  auto rd = std::from_chars(s.data(), s.data() + s.size(), d);
  if (rd.ec == std::errc{} && rd.ptr == s.data() + s.size() && !s.empty()) return d;
  return s;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + " is empty");
  CsvTable table(split_commas(line));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto parts = split_commas(line);
    if (parts.size() != table.columns().size()) {
      throw ParseError(lineno, path.string() + ": wrong number of fields");
    }
    std::vector<CsvValue> row;
    for (const auto& p : parts) row.push_back(parse_cell(p));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace tpc
