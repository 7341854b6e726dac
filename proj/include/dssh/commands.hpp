#pragma once

#include "dssh/config.hpp"
#include "dssh/io.hpp"

#include <filesystem>
#include <vector>

namespace dssh {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  int threads = 1;
};

using FileList = std::vector<std::filesystem::path>;

/// OBC/PBC spectra of the configured lattice family, plus an optional
/// Gamma_1 sweep (sweep_start/stop/step keys).
FileList cmd_spectrum(const RunConfig& cfg, const RunOptions& opt);

/// (alpha, |G|) phase diagram at fixed Gamma_2.
FileList cmd_phase_diagram(const RunConfig& cfg, const RunOptions& opt);

/// Biorthogonal projection profiles of every mode, with the analytic edge
/// pair flagged; broken terminations export the single exact mode.
FileList cmd_edge_modes(const RunConfig& cfg, const RunOptions& opt);

/// Right-eigenvector magnitudes and localization metrics (skin effect).
FileList cmd_skin(const RunConfig& cfg, const RunOptions& opt);

/// Time-domain LCR trajectory plus extracted poles vs envelope eigenvalues.
FileList cmd_circuit(const RunConfig& cfg, const RunOptions& opt);

/// Adiabatic-elimination accuracy table against the effective Bloch matrix.
FileList cmd_eliminate(const RunConfig& cfg, const RunOptions& opt);

}  // namespace dssh
