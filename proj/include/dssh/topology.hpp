#pragma once

#include "dssh/types.hpp"

#include <vector>

namespace dssh {

/// Closed-form Bloch eigenvectors of one momentum: the +/- branches with
/// their biorthogonal partners (L = R for the Hermitian and plain dssh
/// families, which are normal at every k).
struct AnalyticBlochPair {
  Complex e_plus, e_minus;
  ComplexVector r_plus, r_minus, l_plus, l_minus;
};

/// Analytic eigenvectors for hermitian_ssh, dssh and antipt_dssh. The
/// anti-PT family uses the sinh/cosh parametrization, valid only for
/// |delta_bar| < |h(k)|; outside that regime an out-of-regime error is
/// thrown. Left/right pairs of the anti-PT branch carry the printed
/// normalization, |<L|R>| = 1 up to a theta-dependent phase.
AnalyticBlochPair analytic_bloch_vectors(ModelKind model, const LatticeParamsd& p, double k);

struct WindingResult {
  double nu = 0;        // representative of the winding in [-0.5, 1.5)
  int k_samples = 0;
  double residual = 0;  // distance of nu to the nearest integer
};

/// Sampled eigenvector field on the k-grid (endpoint excluded), one
/// biorthonormal pair per point. Used by winding_from_field.
struct BlochField {
  std::vector<ComplexVector> rights, lefts;
};

/// Winding number from a sampled field: the biorthogonal Berry connection
/// accumulated factor by factor around the closed loop (a Wilson loop over
/// the <L_j|R_{j+1}> overlaps). The loop integral is defined modulo 2, so
/// the representative is reported in [-0.5, 1.5), matching the quantized
/// values 0 and 1 of the two-band families.
WindingResult winding_from_field(const BlochField& field);

/// Winding number of the + band on the uniform grid of n_k >= 64 points.
/// Throws when the band gap closes on the grid (phase boundary).
WindingResult winding_number(ModelKind model, const LatticeParamsd& p, int n_k);

enum class Region { single_boundary, double_boundary, no_topology };

/// A_+- of the (|G|, alpha) phase diagram and the derived region label.
struct PhaseClassification {
  Complex a_plus, a_minus;
  Region region = Region::single_boundary;
  double x_plus = 0, x_minus = 0;  // sqrt(A) where A is real-nonnegative, else NaN
  bool gamma_r_modes_predicted = false;
};

const char* region_name(Region r);

/// A_+- = -|G|^2 cos(2 alpha) +- sqrt(Gamma_2^4 - |G|^4 sin^2(2 alpha)),
/// with the no_topology region exactly where the discriminant is negative.
/// The gamma_r_modes_predicted field is left false (no Gamma_1 given here).
PhaseClassification phase_boundaries(double g_mag, double alpha, double gamma2);

/// Full classification at a parameter point: Gamma_r-modes are predicted iff
/// sqrt((Gamma_1^2-|G|^2)^2 + 4 |G|^2 Gamma_1^2 cos^2 alpha) < Gamma_2^2,
/// equivalently |Z| < 1.
PhaseClassification classify_point(const LatticeParamsd& p);

struct PhaseDiagramRow {
  double alpha, g_mag;
  PhaseClassification cls;
};

std::vector<PhaseDiagramRow> phase_diagram(const std::vector<double>& alpha_grid,
                                           const std::vector<double>& g_grid, double gamma2);

}  // namespace dssh
