#pragma once

#include "dssh/config.hpp"
#include "dssh/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dssh {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// 17 significant digits, enough for exact double round-trips.
std::string format_number(double v);

/// Real values print bare; complex ones as re+imi (no comma, CSV-safe).
std::string format_complex(Complex v);

/// A plot-ready table with already-formatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Write a table as CSV, or as a JSON array of row objects. The path gets
/// the matching extension appended. Returns the full path written.
std::filesystem::path write_table(const Table& t, const std::filesystem::path& stem,
                                  OutputFormat fmt);

/// Minimal JSON object writer for run summaries (string/number/array values,
/// already serialized by the caller helpers below).
struct JsonField {
  std::string key;
  std::string raw;  // already-valid JSON fragment
};
std::string json_string(const std::string& s);
std::string json_number(double v);
std::string json_array(const std::vector<double>& vs);
std::filesystem::path write_json_object(const std::vector<JsonField>& fields,
                                        const std::filesystem::path& path);

void ensure_directory(const std::filesystem::path& dir);

}  // namespace dssh
