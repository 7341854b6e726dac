#include "dssh/io.hpp"

#include <cstdio>
#include <fstream>

namespace dssh {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  if (v.imag() == 0.0) return format_number(v.real());
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::filesystem::path write_table(const Table& t, const std::filesystem::path& stem,
                                  OutputFormat fmt) {
  std::filesystem::path path = stem;
  path += fmt == OutputFormat::csv ? ".csv" : ".json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (fmt == OutputFormat::csv) {
    for (std::size_t c = 0; c < t.header.size(); ++c)
      out << (c ? "," : "") << t.header[c];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
  } else {
    out << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << "  {";
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        out << (c ? ", " : "") << json_string(t.header[c]) << ": ";
        // numeric cells pass through; anything else is quoted
        const std::string& cell = t.rows[r][c];
        const bool numeric = cell.find_first_not_of("0123456789+-.eE") == std::string::npos &&
                             cell.find_first_of("0123456789") != std::string::npos;
        out << (numeric ? cell : json_string(cell));
      }
      out << (r + 1 < t.rows.size() ? "},\n" : "}\n");
    }
    out << "]\n";
  }
  if (!out.good()) throw IoError("write failed for " + path.string());
  return path;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string json_number(double v) { return format_number(v); }

std::string json_array(const std::vector<double>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + format_number(vs[i]);
  return out + "]";
}

std::filesystem::path write_json_object(const std::vector<JsonField>& fields,
                                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << "  " << json_string(fields[i].key) << ": " << fields[i].raw
        << (i + 1 < fields.size() ? ",\n" : "\n");
  out << "}\n";
  if (!out.good()) throw IoError("write failed for " + path.string());
  return path;
}

}  // namespace dssh
