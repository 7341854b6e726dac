#include "dssh/topology.hpp"

#include "dssh/hamiltonians.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace dssh;

namespace {

LatticeParamsd lattice(double g1, double g2, double gam) {
  LatticeParamsd p;
  p.gamma1 = g1;
  p.gamma2 = g2;
  p.gamma = gam;
  return p;
}

}  // namespace

TEST_CASE("analytic vectors: dssh left equals right componentwise") {
  const LatticeParamsd p = lattice(1.0, 2.0, 3.0);
  for (double k : {0.1, 1.7, 3.9, 6.0}) {
    const auto v = analytic_bloch_vectors(ModelKind::dssh, p, k);
    CHECK((v.r_plus - v.l_plus).cwiseAbs().maxCoeff() == 0.0);
    CHECK((v.r_minus - v.l_minus).cwiseAbs().maxCoeff() == 0.0);
    // and they are genuine eigenvectors of the Bloch matrix
    const ComplexMatrix h = bloch(ModelKind::dssh, p, k);
    CHECK((h * v.r_plus - v.e_plus * v.r_plus).norm() < 1e-12);
    CHECK((h * v.r_minus - v.e_minus * v.r_minus).norm() < 1e-12);
  }
}

TEST_CASE("analytic vectors: anti-PT at delta_bar = 0 reduces to the dssh pair") {
  LatticeParamsd p = lattice(1.0, 2.0, 3.0);
  for (double k : {0.4, 2.0, 5.5}) {
    const auto a = analytic_bloch_vectors(ModelKind::antipt_dssh, p, k);
    const auto d = analytic_bloch_vectors(ModelKind::dssh, p, k);
    // same ray up to a global phase
    const Complex over = a.r_plus.normalized().dot(d.r_plus.normalized());
    CHECK(std::abs(std::abs(over) - 1.0) < 1e-12);
    CHECK(std::abs(a.e_plus - d.e_plus) < 1e-12);
  }
}

TEST_CASE("analytic vectors: anti-PT satisfies the eigenproblem against bloch()") {
  LatticeParamsd p = lattice(1.0, 2.0, 3.0);
  p.delta1 = 0.5;
  p.delta2 = -0.5;  // delta_bar = 0.5
  const double k = M_PI / 2;
  const auto v = analytic_bloch_vectors(ModelKind::antipt_dssh, p, k);
  const ComplexMatrix h = bloch(ModelKind::antipt_dssh, p, k);
  CHECK((h * v.r_plus - v.e_plus * v.r_plus).norm() < 1e-10);
  CHECK((h * v.r_minus - v.e_minus * v.r_minus).norm() < 1e-10);
  CHECK((h.adjoint() * v.l_plus - std::conj(v.e_plus) * v.l_plus).norm() < 1e-10);
  CHECK((h.adjoint() * v.l_minus - std::conj(v.e_minus) * v.l_minus).norm() < 1e-10);
  // cross products vanish; the diagonal pairing keeps unit modulus
  CHECK(std::abs(v.l_minus.dot(v.r_plus)) < 1e-12);
  CHECK(std::abs(std::abs(v.l_plus.dot(v.r_plus)) - 1.0) < 1e-12);
}

TEST_CASE("analytic vectors: out-of-regime detuning is rejected") {
  LatticeParamsd p = lattice(1.0, 2.0, 3.0);
  p.delta1 = 8.0;
  p.delta2 = 0.0;  // delta_bar = 4 > max_k |h| = 3
  CHECK_THROWS_AS(analytic_bloch_vectors(ModelKind::antipt_dssh, p, 1.0), std::domain_error);
}

TEST_CASE("winding number reproduces the flat-band classification") {
  LatticeParamsd p;
  p.t1 = 0.5;
  p.t2 = 1.0;
  WindingResult w = winding_number(ModelKind::hermitian_ssh, p, 1024);
  CHECK(w.residual < 1e-6);
  CHECK(w.nu == doctest::Approx(1.0).epsilon(1e-6));

  p.t1 = 2.0;
  w = winding_number(ModelKind::hermitian_ssh, p, 1024);
  CHECK(w.residual < 1e-6);
  CHECK(w.nu == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));

  w = winding_number(ModelKind::dssh, lattice(1.0, 2.0, 3.0), 1024);
  CHECK(w.residual < 1e-6);
  CHECK(w.nu == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("winding quantization over random couplings") {
  auto gen = test::rng(99);
  std::uniform_real_distribution<double> mag(0.1, 2.0), ratio(0.0, 2.0);
  int done = 0;
  while (done < 200) {
    const double r = ratio(gen);
    if (r > 0.95 && r < 1.05) continue;  // stay off the phase boundary
    LatticeParamsd p;
    p.t2 = mag(gen) * (gen() % 2 ? 1.0 : -1.0);
    p.t1 = r * std::abs(p.t2) * (gen() % 2 ? 1.0 : -1.0);
    const WindingResult w = winding_number(ModelKind::hermitian_ssh, p, 1024);
    CHECK(w.residual < 1e-6);
    const int expected = std::abs(p.t1) < std::abs(p.t2) ? 1 : 0;
    CHECK(std::lround(w.nu) == expected);
    ++done;
  }
}

TEST_CASE("winding is invariant under smooth gauge perturbations") {
  auto gen = test::rng(2718);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    LatticeParamsd p;
    p.t1 = trial % 2 ? 0.4 : 1.8;
    p.t2 = 1.0;
    const int nk = 512;
    // sample the field by hand, as winding_number does
    BlochField field;
    for (int j = 0; j < nk; ++j) {
      const double k = 2.0 * M_PI * j / nk;
      const auto v = analytic_bloch_vectors(ModelKind::hermitian_ssh, p, k);
      field.rights.push_back(v.r_plus);
      field.lefts.push_back(v.l_plus);
    }
    const double nu0 = winding_from_field(field).nu;
    const double a1 = amp(gen), a2 = amp(gen), b1 = amp(gen), b2 = amp(gen);
    for (int j = 0; j < nk; ++j) {
      const double k = 2.0 * M_PI * j / nk;
      const double chi = a1 * std::sin(k + b1) + a2 * std::sin(2 * k + b2);
      const Complex ph = std::exp(Complex(0, chi));
      field.rights[j] *= ph;
      field.lefts[j] *= ph;
    }
    const double nu1 = winding_from_field(field).nu;
    CHECK(std::lround(nu0) == std::lround(nu1));
    CHECK(std::abs(nu0 - nu1) < 1e-6);
  }
}

TEST_CASE("winding refuses to integrate across a gap closure") {
  LatticeParamsd p;
  p.t1 = 1.0;
  p.t2 = 1.0;
  CHECK_THROWS(winding_number(ModelKind::hermitian_ssh, p, 1024));
  CHECK_THROWS_AS(winding_number(ModelKind::hermitian_ssh, p, 8), std::invalid_argument);
}

TEST_CASE("phase boundaries: the three reference points") {
  SUBCASE("double boundary at alpha = pi/2, |G| = 3") {
    const PhaseClassification c = phase_boundaries(3.0, M_PI / 2, 2.0);
    CHECK(c.a_plus.real() == doctest::Approx(13.0).epsilon(1e-12));
    CHECK(c.a_minus.real() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(c.x_plus == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
    CHECK(c.x_minus == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(c.region == Region::double_boundary);
  }
  SUBCASE("no topology at alpha = pi/4, |G| = 3") {
    const PhaseClassification c = phase_boundaries(3.0, M_PI / 4, 2.0);
    CHECK(c.region == Region::no_topology);
    CHECK(c.a_plus.imag() != 0.0);
    CHECK(std::isnan(c.x_plus));
  }
  SUBCASE("G = 0 reduces to the plain dssh criterion") {
    const PhaseClassification c = phase_boundaries(0.0, 1.234, 2.0);
    CHECK(c.a_plus.real() == doctest::Approx(4.0));
    CHECK(c.a_minus.real() == doctest::Approx(-4.0));
    CHECK(c.region == Region::single_boundary);
    for (double g1 : {0.5, 1.9, 2.1, 3.0}) {
      LatticeParamsd p = lattice(g1, 2.0, 3.0);
      CHECK(classify_point(p).gamma_r_modes_predicted == (g1 < 2.0));
    }
  }
}

TEST_CASE("classify_point at the reference parameter points") {
  LatticeParamsd p = lattice(2.7, 2.0, 3.0);
  p.g_mag = 3.0;
  p.alpha = M_PI / 2;
  CHECK(classify_point(p).gamma_r_modes_predicted);

  p.gamma1 = 0.5;
  CHECK_FALSE(classify_point(p).gamma_r_modes_predicted);

  p.gamma1 = 1.0;
  p.g_mag = 1.0;
  const PhaseClassification c = classify_point(p);
  CHECK(c.a_plus.real() == doctest::Approx(5.0));
  CHECK(c.a_minus.real() == doctest::Approx(-3.0));
  CHECK(c.gamma_r_modes_predicted);
}

TEST_CASE("edge-mode criterion is exactly |Z| < 1") {
  auto gen = test::rng(31415);
  std::uniform_real_distribution<double> u(0.0, 4.0), ang(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 1000; ++trial) {
    LatticeParamsd p = lattice(u(gen), 0.1 + u(gen), u(gen));
    p.g_mag = u(gen);
    p.alpha = ang(gen);
    const bool pred = classify_point(p).gamma_r_modes_predicted;
    CHECK(pred == (std::abs(p.z_factor()) < 1.0));
  }
}

TEST_CASE("A_+- factorization agrees with the direct criterion") {
  auto gen = test::rng(424242);
  std::uniform_real_distribution<double> u(0.0, 4.0), ang(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 300; ++trial) {
    LatticeParamsd p = lattice(u(gen), 0.1 + u(gen), 1.0);
    p.g_mag = u(gen);
    p.alpha = ang(gen);
    const PhaseClassification c = classify_point(p);
    if (c.region == Region::no_topology) {
      CHECK_FALSE(c.gamma_r_modes_predicted);
      continue;
    }
    const double x = p.gamma1 * p.gamma1;
    const double prod = (x - c.a_plus.real()) * (x - c.a_minus.real());
    CHECK((prod < 0) == c.gamma_r_modes_predicted);
  }
}

TEST_CASE("phase diagram covers the three regions with the analytic frontier") {
  std::vector<double> alphas(101), gs(101);
  for (int i = 0; i < 101; ++i) {
    alphas[i] = M_PI * i / 100.0;
    gs[i] = 4.0 * i / 100.0;
  }
  const auto rows = phase_diagram(alphas, gs, 2.0);
  REQUIRE(rows.size() == 101 * 101);
  int reds = 0;
  for (const auto& r : rows) {
    const bool analytic_red =
        r.g_mag * r.g_mag * std::abs(std::sin(2.0 * r.alpha)) > 2.0 * 2.0;
    CHECK((r.cls.region == Region::no_topology) == analytic_red);
    if (r.cls.region == Region::no_topology) ++reds;
    if (r.alpha == 0.0 || r.g_mag == 0.0) CHECK(r.cls.region == Region::single_boundary);
  }
  CHECK(reds > 0);
  CHECK_THROWS_AS(phase_diagram({}, gs, 2.0), std::invalid_argument);
}
