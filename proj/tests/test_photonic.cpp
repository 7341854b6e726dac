#include "dssh/photonic.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace dssh;

namespace {

PhotonicParams base(int n, double g, double big_g = 0.0, double alpha = 0.0) {
  PhotonicParams p;
  p.n_cells = n;
  p.g = g;
  p.kappa1 = 1.0;
  p.kappa2 = 0.5;
  p.gamma = 1e-4;
  p.g_mag = big_g;
  p.alpha = alpha;
  p.boundary = Boundary::periodic;
  return p;
}

}  // namespace

TEST_CASE("decoupled chain is block diagonal with bare poles") {
  PhotonicParams p = base(3, 0.0);
  p.delta1 = 0.02;
  p.delta2 = -0.01;
  const ComplexMatrix m = build_full_linear(p);
  Eigen::VectorXcd want(12);
  int idx = 0;
  for (int q = 0; q < 3; ++q) {
    want(idx++) = Complex(p.delta_bar(), -p.gamma);
    want(idx++) = Complex(-p.delta_bar(), -p.gamma);
  }
  for (int q = 0; q < 3; ++q) want(idx++) = Complex(-p.delta_sum(), -p.kappa1);
  for (int q = 0; q < 3; ++q) want(idx++) = Complex(-p.delta_sum(), -p.kappa2);
  const Eigen::VectorXcd e = Eigen::ComplexEigenSolver<ComplexMatrix>(m, false).eigenvalues();
  CHECK(test::spectrum_set_distance(e, want) < 1e-12);
}

TEST_CASE("the coherent part of the generator is Hermitian") {
  PhotonicParams p = base(4, 0.01, 3e-4, 1.1);
  const ComplexMatrix m = build_full_linear(p);
  ComplexMatrix decays = ComplexMatrix::Zero(16, 16);
  for (int q = 0; q < 4; ++q) {
    decays(2 * q, 2 * q) = decays(2 * q + 1, 2 * q + 1) = Complex(0, -p.gamma);
    decays(8 + q, 8 + q) = Complex(0, -p.kappa1);
    decays(12 + q, 12 + q) = Complex(0, -p.kappa2);
  }
  const ComplexMatrix herm = m - decays;
  CHECK((herm - herm.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("open boundary omits the b_1 bath link, PBC closes it through d_N") {
  PhotonicParams p = base(3, 0.01);
  p.boundary = Boundary::open;
  const ComplexMatrix open = build_full_linear(p);
  p.boundary = Boundary::periodic;
  const ComplexMatrix closed = build_full_linear(p);
  const Index b1 = 0, d3 = 3 * 3 + 2;  // d_N sits in the last fast slot
  CHECK(open(b1, d3) == Complex(0));
  CHECK(closed(b1, d3) == Complex(0.01));
  CHECK(open(2, 9) == Complex(0.01));  // b_2 <-> d_1 exists either way
}

TEST_CASE("single-cell Schur elimination reproduces the g^2/kappa couplings") {
  const PhotonicParams p = base(1, 0.01);
  const ComplexMatrix m = build_full_linear(p);
  const ComplexMatrix eff = adiabatic_eliminate(m, {0, 1}, {2, 3});
  const Complex i(0, 1);
  const double G1 = p.gamma1_eff(), G2 = p.gamma2_eff();
  CHECK(std::abs(eff(0, 0) - Complex(0, -(p.gamma + G1 + G2))) < 1e-15);
  CHECK(std::abs(eff(1, 1) - Complex(0, -(p.gamma + G1 + G2))) < 1e-15);
  CHECK(std::abs(eff(0, 1) - i * (G1 + G2)) < 1e-15);
  CHECK(std::abs(eff(1, 0) - i * (G1 + G2)) < 1e-15);
}

TEST_CASE("g = 0 leaves the slow block untouched") {
  PhotonicParams p = base(2, 0.0, 2e-4, 0.8);
  const ComplexMatrix m = build_full_linear(p);
  std::vector<Index> slow{0, 1, 2, 3}, fast{4, 5, 6, 7};
  const ComplexMatrix eff = adiabatic_eliminate(m, slow, fast);
  ComplexMatrix mss(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) mss(r, c) = m(r, c);
  CHECK((eff - mss).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("elimination converges to the analytic limit as 1/kappa") {
  // finite detunings make the zeroth-order elimination inexact
  auto err_at = [](double kappa_scale) {
    PhotonicParams p = base(4, 0.0);
    p.kappa1 = kappa_scale;
    p.kappa2 = 0.5 * kappa_scale;
    p.g = 0.01 * std::sqrt(kappa_scale);  // keeps g^2/kappa fixed
    p.delta1 = 0.004;
    p.delta2 = -0.002;
    return effective_bloch_error(p, 4).max_abs_error;
  };
  const double e1 = err_at(1.0);
  const double e2 = err_at(2.0);
  CHECK(e2 < 0.6 * e1);
}

TEST_CASE("singular fast blocks are rejected") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;  // fast block (2,3) entirely zero
  CHECK_THROWS_AS(adiabatic_eliminate(m, {0, 1}, {2, 3}), std::runtime_error);
  CHECK_THROWS_AS(adiabatic_eliminate(m, {0, 1}, {}), std::invalid_argument);
}

TEST_CASE("effective Bloch matrix matches within 2% at g/kappa = 0.01") {
  PhotonicParams p = base(25, 0.005);  // g / kappa2 = 0.01
  p.delta1 = 0.5 * p.g;
  p.delta2 = 0.0;
  REQUIRE(p.weak_coupling());
  const BlochErrorReport rep = effective_bloch_error(p, 25);
  CHECK(rep.max_rel_error < 0.02);
  CHECK(rep.rows.size() == 25 * 4);
}

TEST_CASE("halving g/kappa at least halves the elimination error") {
  auto err_at = [](double g) {
    PhotonicParams p = base(8, g);
    p.delta1 = 0.5 * g;
    p.delta2 = 0.0;
    return effective_bloch_error(p, 8).max_abs_error;
  };
  const double e04 = err_at(0.04 * 0.5);
  const double e02 = err_at(0.02 * 0.5);
  const double e01 = err_at(0.01 * 0.5);
  CHECK(e02 <= 0.5 * e04);
  CHECK(e01 <= 0.5 * e02);
}

TEST_CASE("fitted couplings land on g^2/kappa within 2%") {
  const PhotonicParams p = base(12, 0.005);
  const BlochErrorReport rep = effective_bloch_error(p, 12);
  CHECK(rep.gamma1_fit == doctest::Approx(p.gamma1_eff()).epsilon(0.02));
  CHECK(rep.gamma2_fit == doctest::Approx(p.gamma2_eff()).epsilon(0.02));
}

TEST_CASE("coherent coupling survives elimination untouched") {
  PhotonicParams p = base(6, 0.0, 3e-4, M_PI / 3);
  const BlochErrorReport rep = effective_bloch_error(p, 6);
  CHECK(rep.max_abs_error < 1e-15);
}

TEST_CASE("non-reciprocal split of the eliminated couplings follows Gamma_-+") {
  PhotonicParams p = base(10, 0.005, 2.5e-5, M_PI / 2);  // |G| ~ Gamma_1 scale
  const BlochErrorReport rep = effective_bloch_error(p, 10);
  CHECK(rep.max_rel_error < 0.02);
  // at alpha = pi/2 the two off-diagonals differ by 2|G| in the imaginary part
  for (const auto& r : rep.rows) {
    if (r.row == 0 && r.col == 1 && r.k == 0.0) {
      const double up = r.numeric.imag();
      for (const auto& r2 : rep.rows)
        if (r2.row == 1 && r2.col == 0 && r2.k == 0.0)
          CHECK(up - r2.numeric.imag() ==
                doctest::Approx(2 * p.g_mag).epsilon(0.02));
    }
  }
}

TEST_CASE("eliminated chain is anti-Hermitian after removing the damping shift") {
  const PhotonicParams p = base(6, 0.005);
  const ComplexMatrix m = build_full_linear(p);
  std::vector<Index> slow(12), fast(12);
  for (int q = 0; q < 12; ++q) {
    slow[q] = q;
    fast[q] = 12 + q;
  }
  const ComplexMatrix eff = adiabatic_eliminate(m, slow, fast);
  const ComplexMatrix shifted =
      eff + Complex(0, p.gamma_r_eff()) * ComplexMatrix::Identity(12, 12);
  CHECK((shifted.adjoint() + shifted).cwiseAbs().maxCoeff() < 1e-12 * p.gamma2_eff());
}

TEST_CASE("photonic parameter validation") {
  PhotonicParams p = base(2, 0.01);
  p.kappa2 = 2.0;  // violates kappa1 > kappa2
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  PhotonicParams q = base(2, 0.01);
  q.boundary = Boundary::open;
  CHECK_THROWS_AS(effective_bloch_error(q, 4), std::invalid_argument);
  CHECK(base(2, 0.01).weak_coupling());
  CHECK_FALSE(base(2, 0.1).weak_coupling());
}
