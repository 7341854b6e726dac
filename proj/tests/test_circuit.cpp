#include "dssh/circuit.hpp"

#include "dssh/hamiltonians.hpp"
#include "dssh/spectral.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace dssh;

namespace {

// desk-scale defaults: f0 ~ 1 MHz, Gamma/omega ~ 1e-2
CircuitParams desk_params(int n = 1) {
  CircuitParams p;
  p.n_cells = n;
  p.c1 = p.c2 = 1e-9;
  p.l1 = p.l2 = 2.5330295910584444e-5;  // omega0 = 2 pi * 1 MHz
  const double w = 1.0 / std::sqrt(p.l1 * p.c1);
  p.rc1 = 1.0 / (0.01 * w * p.c1);
  p.rc2 = 1.0 / (0.005 * w * p.c2);
  p.r1 = p.r2 = 1.0 / (0.003 * w * p.c1);
  return p;
}

Eigen::VectorXcd eigvals(const Eigen::MatrixXd& m) { return real_eigenvalues(m); }

}  // namespace

TEST_CASE("circuit params derive rates and the weak-coupling flag") {
  CircuitParams p = desk_params();
  CHECK(p.omega1() == doctest::Approx(2e6 * M_PI).epsilon(1e-9));
  CHECK(p.big_gamma1() == doctest::Approx(0.01 * p.omega1()).epsilon(1e-9));
  CHECK(p.weak_coupling());
  p.l2 *= 2.0;  // detune far beyond the window
  CHECK_FALSE(p.weak_coupling());
  p.c2 = 2 * p.c1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("dimer system eigenvalues sit at the damped-oscillator scale") {
  const CircuitParams p = desk_params();
  const Eigen::VectorXcd e = eigvals(build_circuit_system(p));
  REQUIRE(e.size() == 4);
  // conjugate-paired spectrum of the real system
  CHECK(test::spectrum_set_distance(e, e.conjugate()) < 1e-6 * p.omega1());
  // trace fixes the total damping: dimers carry gamma_i + Gamma_1 only
  double re_sum = 0;
  for (Index j = 0; j < 4; ++j) {
    re_sum += e(j).real();
    CHECK(std::abs(std::abs(e(j).imag()) - p.omega1()) < 0.05 * p.omega1());
  }
  CHECK(re_sum ==
        doctest::Approx(-(p.small_gamma1() + p.small_gamma2() + 2 * p.big_gamma1())).epsilon(1e-9));
}

TEST_CASE("huge coupling resistors decouple the chain into damped oscillators") {
  CircuitParams p = desk_params();
  p.rc1 = p.rc2 = 1e15;  // Gamma ~ 1e-6 s^-1, vanishing on the omega scale
  const Eigen::VectorXcd e = eigvals(build_circuit_system(p));
  const double g1 = p.small_gamma1();
  const Complex want(-g1 / 2, std::sqrt(p.omega1() * p.omega1() - g1 * g1 / 4));
  double best = 1e300;
  for (Index j = 0; j < 4; ++j) best = std::min(best, std::abs(e(j) - want));
  CHECK(best < 1e-3 * p.omega1());  // residual coupling is ~Gamma = 1e-6 omega
}

TEST_CASE("periodic chains stay conjugation-symmetric and passive") {
  CircuitParams p = desk_params(25);
  p.boundary = Boundary::periodic;
  const Eigen::VectorXcd e = eigvals(build_circuit_system(p));
  CHECK(test::spectrum_set_distance(e, e.conjugate()) < 1e-6 * p.omega1());
  for (Index j = 0; j < e.size(); ++j) CHECK(e(j).real() <= 1e-9 * p.omega1());
}

TEST_CASE("integrate: lossless oscillator holds its amplitude for 100 periods") {
  CircuitParams p = desk_params();
  p.rc1 = p.rc2 = 1e18;
  p.r1 = p.r2 = 1e18;
  const double period = 2 * M_PI / p.omega1();
  const double dt = period / 400.0;  // integer samples per period
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4);
  x0(0) = 1.0;
  const TrajectoryData traj = integrate(build_circuit_system(p), x0, 100 * period, dt);
  // RMS over exact periods is phase-insensitive, so it isolates amplitude drift
  const double first = traj.voltages.col(0).head(400).norm();
  const double last = traj.voltages.col(0).tail(400).norm();
  CHECK(std::abs(last / first - 1.0) < 1e-6);
}

TEST_CASE("integrate: stability guard rejects oversized steps") {
  const CircuitParams p = desk_params();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4);
  x0(0) = 1.0;
  CHECK_THROWS_AS(integrate(build_circuit_system(p), x0, 1e-4, 0.2 / p.omega1()),
                  std::invalid_argument);
}

TEST_CASE("integrate: passive total voltage decays window over window") {
  const CircuitParams p = desk_params(3);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(12);
  x0(0) = 1.0;
  const TrajectoryData traj =
      integrate(build_circuit_system(p), x0, 10.0 / p.big_gamma2(), 0.05 / p.omega1());
  const Index n = traj.times.size();
  const Index win = n / 8;
  double prev = 1e300;
  for (int w = 0; w < 8; ++w) {
    const double rms = traj.voltages.middleRows(w * win, win).norm();
    CHECK(rms < prev);
    prev = rms;
  }
}

TEST_CASE("spectral_extract recovers the damped oscillator pole within 1%") {
  CircuitParams p = desk_params();
  p.rc1 = p.rc2 = 1e15;           // decoupled
  p.r1 = p.r2 = p.r1 * 1.0;       // keep desk loss: gamma = 0.003 omega
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4);
  x0(0) = 1.0;
  const double g = p.small_gamma1();
  const TrajectoryData traj =
      integrate(build_circuit_system(p), x0, 40.0 / g, 0.05 / p.omega1());
  const auto poles = spectral_extract(traj);
  REQUIRE(!poles.empty());
  const double want_f = std::sqrt(p.omega1() * p.omega1() - g * g / 4);
  double best = 1e300;
  PoleEstimate hit{};
  for (const auto& pe : poles)
    if (std::abs(pe.frequency - want_f) < best) {
      best = std::abs(pe.frequency - want_f);
      hit = pe;
    }
  CHECK(hit.frequency == doctest::Approx(want_f).epsilon(0.01));
  CHECK(hit.decay_rate == doctest::Approx(g / 2).epsilon(0.01));
}

TEST_CASE("resonant dimer: trajectory follows the envelope-matrix evolution") {
  const CircuitParams p = desk_params();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4);
  x0(0) = 1.0;
  const double t_end = 2.0 / p.big_gamma1();
  const TrajectoryData traj = integrate(build_circuit_system(p), x0, t_end, 0.02 / p.omega1());

  // envelope oracle: u(t) = V exp(m t) V^{-1} u0 with u0 = (1, 0)
  const ComplexMatrix m = envelope_matrix(p);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, true);
  const ComplexVector u0 = (ComplexVector(2) << 1, 0).finished();
  auto envelope_abs = [&](double t, int q) {
    const ComplexVector c = es.eigenvectors().inverse() * u0;
    Complex acc = 0;
    for (int j = 0; j < 2; ++j)
      acc += es.eigenvectors()(q, j) * std::exp(es.eigenvalues()(j) * t) * c(j);
    return std::abs(acc);
  };

  const double period = 2 * M_PI / p.omega0();
  const Index per_period = static_cast<Index>(std::llround(period / traj.dt));
  for (double frac : {0.25, 0.5, 0.75}) {
    const Index center = static_cast<Index>(frac * (traj.times.size() - per_period));
    double vmax = 0, vbmax = 0;
    for (Index s = center; s < center + per_period; ++s) {
      vmax = std::max(vmax, std::abs(traj.voltages(s, 0)));
      vbmax = std::max(vbmax, std::abs(traj.voltages(s, 1)));
    }
    const double t = traj.times(center + per_period / 2);
    CHECK(vmax == doctest::Approx(envelope_abs(t, 0)).epsilon(0.05));
    CHECK(vbmax == doctest::Approx(envelope_abs(t, 1)).epsilon(0.05));
  }

  // the two envelope decay rates split by Gamma_1: gamma/2 and gamma/2 + Gamma_1
  const auto poles = spectral_extract(traj);
  REQUIRE(poles.size() >= 2);
  std::vector<double> decays;
  for (const auto& pe : poles) decays.push_back(pe.decay_rate);
  std::sort(decays.begin(), decays.end());
  CHECK(decays.front() == doctest::Approx(p.small_gamma1() / 2).epsilon(0.05));
  CHECK(decays.back() ==
        doctest::Approx(p.small_gamma1() / 2 + p.big_gamma1()).epsilon(0.05));
}

TEST_CASE("envelope matrix of the dimer equals the closed 2x2 form") {
  CircuitParams p = desk_params();
  p.l2 = p.l1 * 1.002;  // slight detuning, still weak-coupling
  const ComplexMatrix m = envelope_matrix(p);
  const Complex i(0, 1);
  ComplexMatrix a6(2, 2);
  a6(0, 0) = p.omega1() - p.omega2() - i * (p.small_gamma1() + p.big_gamma1());
  a6(0, 1) = i * p.big_gamma1();
  a6(1, 0) = i * p.big_gamma1();
  a6(1, 1) = p.omega2() - p.omega1() - i * (p.small_gamma2() + p.big_gamma1());
  const ComplexMatrix want = -0.5 * i * a6;
  CHECK((m - want).cwiseAbs().maxCoeff() < 1e-12 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("symmetric-parameter envelope is a damping shift plus dissipative coupling") {
  CircuitParams p = desk_params(3);
  p.boundary = Boundary::periodic;
  const ComplexMatrix m = envelope_matrix(p);
  const double shift = 0.5 * (p.small_gamma1() + p.big_gamma1() + p.big_gamma2());
  const ComplexMatrix h =
      Complex(0, 1) * (m + shift * ComplexMatrix::Identity(m.rows(), m.cols()));
  CHECK((h.adjoint() + h).cwiseAbs().maxCoeff() < 1e-12 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("PBC envelope Fourier blocks reproduce circuit_bloch") {
  CircuitParams p = desk_params(8);
  p.boundary = Boundary::periodic;
  p.l2 = p.l1 * 1.001;
  const ComplexMatrix m = envelope_matrix(p);
  const int n = 8;
  const Complex i(0, 1);
  for (int j = 0; j < n; ++j) {
    const double k = 2 * M_PI * j / n;
    ComplexMatrix block = ComplexMatrix::Zero(2, 2);
    for (int r = 0; r < n; ++r)
      for (int q = 0; q < n; ++q) {
        const Complex w = std::exp(i * k * static_cast<double>(r - q)) / static_cast<double>(n);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) block(a, b) += std::conj(w) * m(2 * r + a, 2 * q + b);
      }
    const ComplexMatrix want = -i * circuit_bloch(p, k);
    CHECK((block - want).cwiseAbs().maxCoeff() < 1e-10 * want.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("circuit_bloch at Gamma_2 = 0 is the dimer envelope frequency matrix") {
  CircuitParams p = desk_params();
  p.rc2 = 1e18;  // Gamma_2 ~ 0
  const ComplexMatrix h = circuit_bloch(p, 1.3);
  const Complex i(0, 1);
  CHECK(std::abs(h(0, 1) - 0.5 * i * p.big_gamma1()) < 1e-6 * p.big_gamma1());
  CHECK(std::abs(h(0, 0) - (p.delta_bar() - 0.5 * i * (p.small_gamma1() + p.big_gamma1()))) <
        1e-6 * p.big_gamma1());
}

TEST_CASE("circuit_bloch maps onto half the dssh Bloch matrix") {
  const CircuitParams p = desk_params();
  LatticeParamsd lp;
  lp.gamma1 = p.big_gamma1();
  lp.gamma2 = p.big_gamma2();
  lp.gamma = p.small_gamma1();
  for (double k : {0.0, 0.9, M_PI}) {
    const ComplexMatrix a = circuit_bloch(p, k);
    const ComplexMatrix b = 0.5 * bloch(ModelKind::dssh, lp, k);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * b.cwiseAbs().maxCoeff());
  }
  // gap closes at k = pi exactly when Gamma_1 = Gamma_2
  CircuitParams q = desk_params();
  q.rc2 = q.rc1;
  const ComplexMatrix h = circuit_bloch(q, M_PI);
  CHECK(std::abs(h(0, 1)) < 1e-15 * q.big_gamma1());
  CHECK(std::abs(h(0, 0) - h(1, 1)) < 1e-15 * q.big_gamma1());
  // and is 2 pi periodic
  CHECK((circuit_bloch(q, 0.7) - circuit_bloch(q, 0.7 + 2 * M_PI)).cwiseAbs().maxCoeff() <
        1e-12 * q.big_gamma1());
}

TEST_CASE("spectral_extract returns nothing on a null signal") {
  TrajectoryData traj;
  traj.dt = 1e-8;
  traj.times = Eigen::VectorXd::LinSpaced(512, 0.0, 511e-8);
  traj.voltages = Eigen::MatrixXd::Zero(512, 2);
  CHECK(spectral_extract(traj).empty());
}
