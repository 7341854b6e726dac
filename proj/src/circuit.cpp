#include "dssh/circuit.hpp"

#include "dssh/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace dssh {

void CircuitParams::validate() const {
  if (n_cells < 1) throw std::invalid_argument("CircuitParams: n_cells must be >= 1");
  for (double v : {l1, l2, c1, c2, r1, r2, rc1, rc2})
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("CircuitParams: all component values must be positive");
  if (c1 != c2)
    throw std::invalid_argument("CircuitParams: unsupported C1 != C2 (the model assumes equality)");
}

Eigen::MatrixXd build_circuit_system(const CircuitParams& p) {
  p.validate();
  const int n = p.n_cells;
  const bool pbc = p.boundary == Boundary::periodic;
  const double w1sq = p.omega1() * p.omega1();
  const double w2sq = p.omega2() * p.omega2();
  const double g1 = p.big_gamma1(), g2 = p.big_gamma2();

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int cell = 0; cell < n; ++cell) {
    const int v = 4 * cell, vb = 4 * cell + 2;
    const bool has_left = pbc || cell > 0;    // Rc2 between Vb_{cell-1} and V_cell
    const bool has_right = pbc || cell + 1 < n;  // Rc2 between Vb_cell and V_{cell+1}
    m(v, v + 1) = 1.0;
    m(v + 1, v) = -w1sq;
    m(v + 1, v + 1) = -(p.small_gamma1() + g1 + (has_left ? g2 : 0.0));
    m(v + 1, vb + 1) = g1;
    if (has_left) m(v + 1, 4 * ((cell + n - 1) % n) + 3) += g2;

    m(vb, vb + 1) = 1.0;
    m(vb + 1, vb) = -w2sq;
    m(vb + 1, vb + 1) = -(p.small_gamma2() + g1 + (has_right ? g2 : 0.0));
    m(vb + 1, v + 1) = g1;
    if (has_right) m(vb + 1, 4 * ((cell + 1) % n) + 1) += g2;
  }
  return m;
}

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull) {
  const unsigned char* b = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

TrajectoryData integrate(const Eigen::MatrixXd& system, const Eigen::VectorXd& x0,
                         double t_end, double dt) {
  if (system.rows() != system.cols() || system.rows() % 4 != 0)
    throw std::invalid_argument("integrate: system must be a 4N x 4N first-order form");
  if (x0.size() != system.rows()) throw std::invalid_argument("integrate: x0 size mismatch");
  if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("integrate: dt and t_end must be positive");

  const double rho = real_eigenvalues(system).cwiseAbs().maxCoeff();
  if (dt * rho >= 0.1)
    throw std::invalid_argument("integrate: dt * max|eigenvalue| = " + std::to_string(dt * rho) +
                                " violates the 0.1 stability guard");

  const int steps = static_cast<int>(std::llround(t_end / dt));
  const int n_sites = static_cast<int>(system.rows()) / 2;  // 2N voltages

  TrajectoryData traj;
  traj.dt = dt;
  traj.times.resize(steps + 1);
  traj.voltages.resize(steps + 1, n_sites);
  std::uint64_t h = fnv1a(system.data(), sizeof(double) * system.size());
  traj.params_hash = fnv1a(&dt, sizeof(dt), h);

  Eigen::VectorXd x = x0, k1, k2, k3, k4;
  for (int s = 0; s <= steps; ++s) {
    traj.times(s) = s * dt;
    for (int q = 0; q < n_sites; ++q) traj.voltages(s, q) = x(2 * q);  // V's sit at even slots
    if (s == steps) break;
    k1 = system * x;
    k2 = system * (x + 0.5 * dt * k1);
    k3 = system * (x + 0.5 * dt * k2);
    k4 = system * (x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return traj;
}

ComplexMatrix envelope_matrix(const CircuitParams& p) {
  p.validate();
  const int n = p.n_cells;
  const bool pbc = p.boundary == Boundary::periodic;
  const Complex i(0, 1);
  const double g1 = p.big_gamma1(), g2 = p.big_gamma2();
  const double db = p.delta_bar();

  ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int cell = 0; cell < n; ++cell) {
    const int v = 2 * cell, vb = 2 * cell + 1;
    const bool has_left = pbc || cell > 0;
    const bool has_right = pbc || cell + 1 < n;
    m(v, v) = -i * db - 0.5 * (p.small_gamma1() + g1 + (has_left ? g2 : 0.0));
    m(vb, vb) = i * db - 0.5 * (p.small_gamma2() + g1 + (has_right ? g2 : 0.0));
    m(v, vb) = 0.5 * g1;
    m(vb, v) = 0.5 * g1;
    if (has_left) m(v, 2 * ((cell + n - 1) % n) + 1) += 0.5 * g2;
    if (has_right) m(vb, 2 * ((cell + 1) % n)) += 0.5 * g2;
  }
  return m;
}

ComplexMatrix circuit_bloch(const CircuitParams& p, double k) {
  p.validate();
  const Complex i(0, 1);
  const double g1 = p.big_gamma1(), g2 = p.big_gamma2();
  ComplexMatrix h(2, 2);
  h(0, 0) = p.delta_bar() - 0.5 * i * (p.small_gamma1() + g1 + g2);
  h(1, 1) = -p.delta_bar() - 0.5 * i * (p.small_gamma2() + g1 + g2);
  h(0, 1) = 0.5 * i * (g1 + g2 * std::exp(-i * k));
  h(1, 0) = 0.5 * i * (g1 + g2 * std::exp(i * k));
  return h;
}

std::vector<PoleEstimate> spectral_extract(const TrajectoryData& traj) {
  const Index n_total = traj.times.size();
  if (n_total < 16 || traj.voltages.rows() != n_total)
    throw std::invalid_argument("spectral_extract: trajectory too short");

  // carrier estimate from zero crossings, to keep decimation below Nyquist
  Index crossings = 0;
  const Index probe = std::min<Index>(n_total, 20000);
  for (Index j = 1; j < probe; ++j)
    if ((traj.voltages(j, 0) > 0) != (traj.voltages(j - 1, 0) > 0)) ++crossings;
  const double w_est = M_PI * crossings / (probe * traj.dt);

  // V_1, decimated to a manageable sample count without aliasing the carrier
  Index stride = std::max<Index>(1, n_total / 8192);
  if (w_est > 0) {
    const Index nyquist = std::max<Index>(1, static_cast<Index>(M_PI / (1.5 * w_est * traj.dt)));
    stride = std::min(stride, nyquist);
  }
  const Index n = std::min<Index>((n_total - 1) / stride + 1, 8192);
  Eigen::VectorXd s(n);
  for (Index j = 0; j < n; ++j) s(j) = traj.voltages(j * stride, 0);
  const double dt = traj.dt * static_cast<double>(stride);

  const double peak = s.cwiseAbs().maxCoeff();
  if (peak < 1e-12) return {};

  const int p = std::min<int>(16, static_cast<int>(n) / 4);
  // linear prediction: s[i] = sum_m a_m s[i-m]
  const Index rows = n - p;
  Eigen::MatrixXd A(rows, p);
  Eigen::VectorXd b(rows);
  for (Index i = 0; i < rows; ++i) {
    for (int m = 0; m < p; ++m) A(i, m) = s(i + p - 1 - m);
    b(i) = s(i + p);
  }
  Eigen::VectorXd a = A.colPivHouseholderQr().solve(b);

  // roots of z^p - a_1 z^{p-1} - ... - a_p via the companion matrix
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(p, p);
  for (int m = 0; m < p; ++m) comp(0, m) = a(m);
  for (int m = 1; m < p; ++m) comp(m, m - 1) = 1.0;
  Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();

  // amplitudes by least squares on the decimated signal; growing roots are
  // folded onto the unit circle and columns normalized, so one spurious
  // root cannot blow up the conditioning of the fit
  Eigen::MatrixXcd V(n, p);
  for (int m = 0; m < p; ++m) {
    Complex z = roots(m);
    if (std::abs(z) > 1.0) z /= std::abs(z);
    Complex acc(1, 0);
    for (Index i = 0; i < n; ++i) {
      V(i, m) = acc;
      acc *= z;
    }
    const double nrm = V.col(m).norm();
    if (nrm > 0) V.col(m) /= nrm;
  }
  // contributions: share of the signal carried by each (unit-norm) column
  Eigen::VectorXcd contrib = V.colPivHouseholderQr().solve(s.cast<Complex>());
  const double cmax = contrib.cwiseAbs().maxCoeff();

  std::vector<PoleEstimate> poles;
  for (int m = 0; m < p; ++m) {
    if (std::abs(contrib(m)) < 1e-4 * cmax) continue;
    const Complex z = roots(m);
    if (std::abs(z) < 1e-8 || std::abs(z) > 1.0 + 1e-6) continue;
    const Complex lg = std::log(z);
    if (lg.imag() < 0) continue;  // keep one of each conjugate pair
    poles.push_back({lg.imag() / dt, -lg.real() / dt});
  }
  std::sort(poles.begin(), poles.end(), [](const PoleEstimate& x, const PoleEstimate& y) {
    return x.frequency < y.frequency;
  });
  return poles;
}

}  // namespace dssh
