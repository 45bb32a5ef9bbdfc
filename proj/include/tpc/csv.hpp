#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tpc {

using CsvValue = std::variant<std::int64_t, double, std::string>;

// Fixed column set; every row supplies one value per column in column order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<CsvValue>>& rows() const noexcept { return rows_; }

  void add_row(std::vector<CsvValue> row);
  // Named form; names must equal columns() in order.
  void add_record(const std::vector<std::pair<std::string, CsvValue>>& record);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvValue>> rows_;
};

// Shortest round-trip decimal form ("0.5", "10", "1e-07"). Throws
// SerializationError on NaN or infinity.
std::string format_real(double v);

// Header line then one line per row, LF endings.
std::string to_csv_string(const CsvTable& table);

// Throws IoError naming the path when the file cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

// Minimal reader for files produced by write_csv (no quoting).
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace tpc
