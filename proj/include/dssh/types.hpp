#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dssh {

template <typename Real>
using MatrixXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorXc = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = MatrixXc<double>;
using ComplexVector = VectorXc<double>;
using Index = Eigen::Index;

enum class Boundary { open, periodic };

/// The four Hamiltonian families of the lattice toolkit.
enum class ModelKind { hermitian_ssh, dssh, antipt_dssh, nonreciprocal_dssh };

/// Chain termination for the non-reciprocal real-space builders:
/// `full` is the 2N-site chain, `broken_b` drops the last c site (2N-1 sites,
/// chain ends on b_N), `broken_c` drops the first b site (mirror chain).
enum class ChainTermination { full, broken_b, broken_c };

/// Thrown when a biorthogonal pairing degenerates (exceptional point).
class DefectiveMatrixError : public std::runtime_error {
 public:
  explicit DefectiveMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

/// All scalar parameters of the lattice families.
///
/// Site ordering everywhere is interleaved, (A1,B1,A2,B2,...) resp.
/// (b1,c1,b2,c2,...), so unit-cell projectors are contiguous 2x2 blocks.
template <typename Real = double>
struct LatticeParams {
  int n_cells = 1;
  Real t1 = 0, t2 = 0;              // coherent couplings (Hermitian model)
  Real gamma1 = 0, gamma2 = 0;      // dissipative couplings |Gamma_1|, |Gamma_2|
  Real gamma = 0;                   // local decay rate
  Real delta1 = 0, delta2 = 0;      // diagonal detunings
  Real g_mag = 0;                   // |G|, coherent b-c coupling magnitude
  Real alpha = 0;                   // phase of G = |G| e^{i alpha}
  Boundary boundary = Boundary::open;

  /// Effective damping Gamma_r = gamma + Gamma_1 + Gamma_2.
  Real gamma_r() const { return gamma + gamma1 + gamma2; }

  Real delta_bar() const { return (delta1 - delta2) / Real(2); }

  /// Gamma_+- = Gamma_1 -+ |G| sin(alpha) - i |G| cos(alpha).
  std::complex<Real> gamma_plus() const {
    return {gamma1 - g_mag * std::sin(alpha), -g_mag * std::cos(alpha)};
  }
  std::complex<Real> gamma_minus() const {
    return {gamma1 + g_mag * std::sin(alpha), -g_mag * std::cos(alpha)};
  }

  /// Z = Gamma_- Gamma_+ / Gamma_2^2, the per-cell edge-state ratio.
  std::complex<Real> z_factor() const {
    if (gamma2 == Real(0)) throw std::invalid_argument("z_factor: gamma2 must be nonzero");
    return gamma_minus() * gamma_plus() / (gamma2 * gamma2);
  }

  void validate() const {
    if (n_cells < 1) throw std::invalid_argument("LatticeParams: n_cells must be >= 1");
    if (gamma < 0 || gamma1 < 0 || gamma2 < 0 || g_mag < 0)
      throw std::invalid_argument("LatticeParams: rates gamma, gamma1, gamma2, g_mag must be nonnegative");
    for (Real v : {t1, t2, gamma1, gamma2, gamma, delta1, delta2, g_mag, alpha})
      if (!std::isfinite(static_cast<double>(v)))
        throw std::invalid_argument("LatticeParams: all parameters must be finite");
  }
};

using LatticeParamsd = LatticeParams<double>;

}  // namespace dssh
