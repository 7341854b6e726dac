// dssh: spectra, phase diagrams, edge modes, skin effect, circuit and
// adiabatic-elimination datasets for dissipatively coupled SSH lattices.
// Emits plot-ready CSV/JSON; no in-process plotting.

#include "dssh/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipatively coupled SSH lattice toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string format;
  int threads = 1;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "OBC/PBC eigenvalue datasets, optionally a Gamma_1 sweep"},
      {"phase-diagram", "(alpha, |G|) topological phase map at fixed Gamma_2"},
      {"edge-modes", "biorthogonal projection profiles and edge-mode flags"},
      {"skin", "right-eigenvector magnitudes and localization metrics"},
      {"circuit", "LCR time-domain run with pole vs envelope comparison"},
      {"eliminate", "adiabatic elimination vs effective Bloch matrix"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default: current)");
    sub->add_option("--format", format, "csv or json (overrides the config)");
    sub->add_option("--threads", threads, "worker threads for sweeps/grids");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    dssh::RunConfig cfg = dssh::RunConfig::from_file(config_path);
    dssh::RunOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads > 0 ? threads : 1;
    if (format.empty())
      opt.format = cfg.format();
    else if (format == "csv")
      opt.format = dssh::OutputFormat::csv;
    else if (format == "json")
      opt.format = dssh::OutputFormat::json;
    else
      throw dssh::ConfigError("--format must be csv or json");

    dssh::FileList files;
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "spectrum")
      files = dssh::cmd_spectrum(cfg, opt);
    else if (name == "phase-diagram")
      files = dssh::cmd_phase_diagram(cfg, opt);
    else if (name == "edge-modes")
      files = dssh::cmd_edge_modes(cfg, opt);
    else if (name == "skin")
      files = dssh::cmd_skin(cfg, opt);
    else if (name == "circuit")
      files = dssh::cmd_circuit(cfg, opt);
    else if (name == "eliminate")
      files = dssh::cmd_eliminate(cfg, opt);

    for (const auto& f : files) std::cout << f.string() << "\n";
    return 0;
  } catch (const dssh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dssh::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const dssh::DefectiveMatrixError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
