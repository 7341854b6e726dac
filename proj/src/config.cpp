#include "dssh/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dssh {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      // run control
      "model", "boundary", "termination", "format", "seed", "threads",
      // lattice
      "n_cells", "t1", "t2", "gamma1", "gamma2", "gamma", "delta1", "delta2", "g_mag", "alpha",
      // grids and sweeps
      "n_k", "gamma_r_tol", "sweep_param", "sweep_start", "sweep_stop", "sweep_step",
      "alpha_start", "alpha_stop", "alpha_count", "g_start", "g_stop", "g_count",
      // circuit
      "l1", "l2", "c1", "c2", "r1", "r2", "rc1", "rc2", "t_end", "dt",
      // photonic
      "g", "kappa1", "kappa2",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (cfg.values_.count(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

double RunConfig::get_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse number '" + it->second + "'");
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int RunConfig::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw ConfigError("key '" + key + "' must be an integer");
  return i;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t RunConfig::seed() const {
  if (!has("seed")) return 0;
  const auto& s = values_.at("seed");
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("key 'seed': cannot parse unsigned integer '" + s + "'");
  return v;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

ModelKind RunConfig::model() const {
  const std::string m = get_string("model", "");
  if (m == "hermitian_ssh") return ModelKind::hermitian_ssh;
  if (m == "dssh") return ModelKind::dssh;
  if (m == "antipt_dssh") return ModelKind::antipt_dssh;
  if (m == "nonreciprocal_dssh") return ModelKind::nonreciprocal_dssh;
  throw ConfigError(m.empty() ? "missing required key 'model'" : "unknown model '" + m + "'");
}

Boundary RunConfig::boundary() const {
  const std::string b = get_string("boundary", "open");
  if (b == "open") return Boundary::open;
  if (b == "periodic") return Boundary::periodic;
  throw ConfigError("boundary must be open or periodic, got '" + b + "'");
}

ChainTermination RunConfig::termination() const {
  const std::string t = get_string("termination", "full");
  if (t == "full") return ChainTermination::full;
  if (t == "broken_b") return ChainTermination::broken_b;
  if (t == "broken_c") return ChainTermination::broken_c;
  throw ConfigError("termination must be full, broken_b or broken_c, got '" + t + "'");
}

OutputFormat RunConfig::format() const {
  const std::string f = get_string("format", "csv");
  if (f == "csv") return OutputFormat::csv;
  if (f == "json") return OutputFormat::json;
  throw ConfigError("format must be csv or json, got '" + f + "'");
}

LatticeParamsd RunConfig::lattice_params() const {
  LatticeParamsd p;
  p.n_cells = get_int("n_cells", 25);
  p.t1 = get_double("t1", 0.0);
  p.t2 = get_double("t2", 0.0);
  p.gamma1 = get_double("gamma1", 0.0);
  p.gamma2 = get_double("gamma2", 0.0);
  p.gamma = get_double("gamma", 0.0);
  p.delta1 = get_double("delta1", 0.0);
  p.delta2 = get_double("delta2", 0.0);
  p.g_mag = get_double("g_mag", 0.0);
  p.alpha = get_double("alpha", 0.0);
  p.boundary = boundary();
  p.validate();
  return p;
}

CircuitParams RunConfig::circuit_params() const {
  CircuitParams p;
  p.n_cells = get_int("n_cells", 1);
  p.l1 = get_double("l1");
  p.l2 = get_double("l2");
  p.c1 = get_double("c1");
  p.c2 = get_double("c2");
  p.r1 = get_double("r1");
  p.r2 = get_double("r2");
  p.rc1 = get_double("rc1");
  p.rc2 = get_double("rc2");
  p.boundary = boundary();
  p.validate();
  return p;
}

PhotonicParams RunConfig::photonic_params() const {
  PhotonicParams p;
  p.n_cells = get_int("n_cells", 25);
  p.g = get_double("g");
  p.kappa1 = get_double("kappa1");
  p.kappa2 = get_double("kappa2");
  p.gamma = get_double("gamma", 0.0);
  p.delta1 = get_double("delta1", 0.0);
  p.delta2 = get_double("delta2", 0.0);
  p.g_mag = get_double("g_mag", 0.0);
  p.alpha = get_double("alpha", 0.0);
  p.boundary = boundary();
  p.validate();
  return p;
}

}  // namespace dssh
