#pragma once

#include "dssh/spectral.hpp"
#include "dssh/types.hpp"

#include <vector>

namespace dssh {

/// Analytic -i Gamma_r eigenstates of a broken chain (exact at every N).
struct BrokenChainStates {
  ComplexVector right, left;  // biorthonormal, <L|R> = 1
  Complex z;                  // Gamma_- Gamma_+ / Gamma_2^2
  Complex norm_product;       // N_L^* N_R = Z^{N+1} (Z^{-1} - 1) / (1 - Z^N)
};

/// Broken-chain states with components (-Gamma_2/Gamma_+)^{N-n} on b_{n+1}
/// (right, broken_b) and (-Gamma_2/Gamma_-^*)^{N-n} (left), mirror formulas
/// on the c sites for broken_c. Gamma_+- = 0 or Z^N = 1 are rejected.
BrokenChainStates broken_chain_states(const LatticeParamsd& p, ChainTermination which);

/// Full-chain edge doublet assembled from the broken-chain states.
struct EdgeStateSet {
  ComplexVector psi_r_plus, psi_r_minus, psi_l_plus, psi_l_minus;  // length 2N
  ComplexVector r_b, l_b, r_c, l_c;                                // length 2N-1
  Complex z;
  Complex norm_product;
  double residual_norm = 0;  // ||(H_full + i Gamma_r) psi_R^+-||
  bool eigenstate_valid = false;  // |Z| < 1
};

/// psi_R^+- = (r_b (+) 0 +- 0 (+) r_c)/sqrt(2) embedded in the 2N chain.
/// residual_norm is evaluated in extended precision: the <L|R>=1 states span
/// ~|Z|^{-N} in magnitude, so a double-precision matvec would measure only
/// rounding noise at N ~ 25.
EdgeStateSet full_chain_states(const LatticeParamsd& p);

/// Biorthogonal unit-cell projections pi_n = <L|P_n|R>/<L|R> for n = 1..N.
/// The layout argument states which site a 2N-1-dimensional vector is
/// missing; it is ignored for full 2N vectors.
std::vector<Complex> projection_profile(const ComplexVector& left, const ComplexVector& right,
                                        int n_cells,
                                        ChainTermination layout = ChainTermination::full);

struct ModeLocalization {
  double center_of_mass;      // |R|^2-weighted mean of site positions i/D
  double edge_weight_left;    // weight in the outer 10% of sites
  double edge_weight_right;
  double participation_ratio; // in [1/D, 1]
};

struct LocalizationReport {
  std::vector<ModeLocalization> modes;
  double left_localized_fraction = 0;  // fraction of modes with centroid < 0.25
};

/// Per-mode localization metrics on the unit-norm right eigenvectors.
LocalizationReport skin_report(const Spectrum& spec);

}  // namespace dssh
