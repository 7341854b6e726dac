#pragma once

#include "dssh/hamiltonians.hpp"
#include "dssh/types.hpp"

#include <vector>

namespace dssh {

/// Eigenvalues with paired biorthonormal right/left eigenvectors.
///
/// When `biorthonormal` is set, columns satisfy <L_m|R_n> = delta_mn, with the
/// left vectors at unit Euclidean norm and the full scale carried by R.
struct Spectrum {
  Eigen::VectorXcd eigenvalues;  // sorted by (re, im) ascending
  ComplexMatrix right_vectors;   // one column per eigenvalue
  ComplexMatrix left_vectors;    // empty unless biorthonormal
  bool biorthonormal = false;
  double min_pairing_overlap = 1.0;  // smallest |<L|R>| at unit norms, conditioning probe
};

/// Full biorthogonal eigendecomposition. Left vectors come from H^dagger and
/// are matched greedily by conjugate eigenvalue, ties broken by maximal
/// |<L|R>|; exactly degenerate clusters are re-biorthogonalized as a block.
/// Throws DefectiveMatrixError for genuinely defective input: a degenerate
/// cluster whose Gram matrix is singular below 1e-10, or a pairing overlap
/// at the underflow scale. Ill-conditioned but diagonalizable chains (the
/// skin-effect regime reaches |<L|R>| ~ 1e-15) pass through with the
/// conditioning recorded in min_pairing_overlap.
Spectrum eig_biorthogonal(const ComplexMatrix& h);

/// Right eigendecomposition only (no pairing, `biorthonormal` = false).
/// Usable where the matrix is defective-adjacent, e.g. the extreme skin runs.
Spectrum eig_right(const ComplexMatrix& h);

/// Indices n with |E_n - (-i gamma_r)| < tol, sorted. tol must be finite.
std::vector<Index> gamma_r_modes(const Spectrum& spec, double gamma_r, double tol);

struct BandPoint {
  double k;
  Complex e_plus, e_minus;
};

/// Bloch eigenvalues on the closed grid k_j = 2 pi j / n_k, j = 0..n_k, with
/// branches continued by nearest-eigenvalue matching between adjacent k.
std::vector<BandPoint> band_sweep(ModelKind model, const LatticeParamsd& p, int n_k);

/// Number of eigenvalues of a tridiagonal operator inside the disk
/// |z - center| < radius, by the argument principle on det(T - z). O(N) per
/// contour point; exact integer count when no eigenvalue touches the contour.
int count_eigenvalues_in_disk(const TridiagonalChain<double>& t, Complex center,
                              double radius, int n_contour = 512);

/// Hausdorff distance between two finite spectra in the complex plane.
double hausdorff_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Eigenvalues of a real matrix, with diagonal balancing first. Companion
/// forms mix entry scales of 1 and omega^2, which the unbalanced Schur
/// iteration does not survive.
Eigen::VectorXcd real_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace dssh
