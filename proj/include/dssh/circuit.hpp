#pragma once

#include "dssh/types.hpp"

#include <cstdint>
#include <vector>

namespace dssh {

/// Component values of the resistively coupled LCR chain (SI units).
struct CircuitParams {
  int n_cells = 1;
  double l1 = 0, l2 = 0;    // inductances [H]
  double c1 = 0, c2 = 0;    // capacitances [F]; the model assumes c1 == c2
  double r1 = 0, r2 = 0;    // loss resistances [ohm]
  double rc1 = 0, rc2 = 0;  // coupling resistances [ohm]
  Boundary boundary = Boundary::open;

  double omega1() const { return 1.0 / std::sqrt(l1 * c1); }
  double omega2() const { return 1.0 / std::sqrt(l2 * c2); }
  double big_gamma1() const { return 1.0 / (rc1 * c1); }
  double big_gamma2() const { return 1.0 / (rc2 * c2); }
  double small_gamma1() const { return 1.0 / (r1 * c1); }
  double small_gamma2() const { return 1.0 / (r2 * c2); }
  double omega0() const { return 0.5 * (omega1() + omega2()); }
  double delta_bar() const { return 0.5 * (omega1() - omega2()); }

  /// {Gamma} << {omega} and near-degenerate resonances, ratio threshold 0.05.
  bool weak_coupling() const {
    const double wmin = std::min(omega1(), omega2());
    return std::max(big_gamma1(), big_gamma2()) <= 0.05 * wmin &&
           std::abs(omega1() - omega2()) <= 0.05 * omega0();
  }

  void validate() const;
};

/// First-order Kirchhoff system x' = M x with x = (V_1, V'_1, Vb_1, Vb'_1, ...),
/// 4N x 4N real. Damping acts on the voltage derivative; each coupling
/// resistor adds its Gamma to the damping of exactly the two sites it joins,
/// so open ends lose the absent resistor's contribution along with its
/// coupling term (a single dimer keeps only its own resistor rates).
Eigen::MatrixXd build_circuit_system(const CircuitParams& p);

struct TrajectoryData {
  Eigen::VectorXd times;      // strictly increasing, fixed step
  Eigen::MatrixXd voltages;   // one row per sample: V_1, Vb_1, ..., V_N, Vb_N
  double dt = 0;
  std::uint64_t params_hash = 0;
};

/// Classical fixed-step RK4. Rejects dt when dt * max|eigenvalue| >= 0.1.
TrajectoryData integrate(const Eigen::MatrixXd& system, const Eigen::VectorXd& x0,
                         double t_end, double dt);

/// 2N x 2N envelope generator for (v_1, vb_1, ...): slow dynamics of the
/// voltage envelopes in the frame rotating at omega0. Couplings and damping
/// are halved relative to the second-order system; the +-delta_bar detuning
/// is not (it already carries the 1/2 of omega1 - omega2).
ComplexMatrix envelope_matrix(const CircuitParams& p);

/// 2x2 Bloch frequency matrix of the envelope chain at momentum k
/// (eigenvalues are the envelope frequencies omega; the generator block is
/// -i times this).
ComplexMatrix circuit_bloch(const CircuitParams& p, double k);

struct PoleEstimate {
  double frequency;   // rad/s, >= 0
  double decay_rate;  // 1/s
};

/// Dominant complex poles of the sampled V_1 signal, by linear-prediction
/// harmonic inversion. Empty on an all-zero signal.
std::vector<PoleEstimate> spectral_extract(const TrajectoryData& traj);

}  // namespace dssh
