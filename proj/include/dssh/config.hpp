#pragma once

#include "dssh/circuit.hpp"
#include "dssh/photonic.hpp"
#include "dssh/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace dssh {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class OutputFormat { csv, json };

/// One flat key = value file, one reproducible run. Unknown keys are
/// rejected at parse time; typed accessors validate on demand.
class RunConfig {
 public:
  static RunConfig from_file(const std::filesystem::path& path);
  static RunConfig from_string(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t seed() const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  ModelKind model() const;
  Boundary boundary() const;               // default open
  ChainTermination termination() const;    // default full
  OutputFormat format() const;             // default csv
  LatticeParamsd lattice_params() const;
  CircuitParams circuit_params() const;
  PhotonicParams photonic_params() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace dssh
