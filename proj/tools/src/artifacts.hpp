#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symred/maxwell_field.hpp"

namespace symred::cli {

using Json = nlohmann::ordered_json;

// Text that reads back to the same double ("%.17g").
std::string format_double(double value);

class CsvWriter {
 public:
  // Rows are buffered and written when the writer is destroyed.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t columns_;
};

void write_json(const std::filesystem::path& path, const Json& document);
Json read_json(const std::filesystem::path& path);

// Flat little-endian float64 array (Ex, Ey, Ez, Bx, By, Bz, each row-major over
// (ix, iy, iz) with iz fastest) plus a JSON sidecar describing the layout.
// Writes <stem>.bin and <stem>.json; returns the file names.
std::vector<std::string> write_snapshot(const std::filesystem::path& directory, const std::string& stem,
                                        const FieldState& state, double time);
FieldState read_snapshot(const std::filesystem::path& sidecar);

}  // namespace symred::cli
