#include "dssh/topology.hpp"

#include "dssh/hamiltonians.hpp"

#include <cmath>
#include <limits>

namespace dssh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ComplexVector vec2(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

}  // namespace

AnalyticBlochPair analytic_bloch_vectors(ModelKind model, const LatticeParamsd& p, double k) {
  p.validate();
  const Complex i(0, 1);
  AnalyticBlochPair out;
  switch (model) {
    case ModelKind::hermitian_ssh: {
      const double rk = std::abs(p.t1 + p.t2 * std::exp(-i * k));
      const double phi = std::atan2(p.t2 * std::sin(k), p.t1 + p.t2 * std::cos(k));
      out.e_plus = rk;
      out.e_minus = -rk;
      out.r_plus = vec2(1, std::exp(i * phi)) / std::sqrt(2.0);
      out.r_minus = vec2(-1, std::exp(i * phi)) / std::sqrt(2.0);
      out.l_plus = out.r_plus;
      out.l_minus = out.r_minus;
      break;
    }
    case ModelKind::dssh: {
      const Complex h = i * p.gamma1 + i * p.gamma2 * std::exp(-i * k);
      const double rk = std::abs(h);
      const double phi = -std::atan2(p.gamma1 + p.gamma2 * std::cos(k), p.gamma2 * std::sin(k));
      out.e_plus = Complex(0, -p.gamma_r()) + i * rk;
      out.e_minus = Complex(0, -p.gamma_r()) - i * rk;
      out.r_plus = vec2(1, i * std::exp(i * phi)) / std::sqrt(2.0);
      out.r_minus = vec2(1, -i * std::exp(i * phi)) / std::sqrt(2.0);
      out.l_plus = out.r_plus;  // anti-Hermitian: left and right coincide
      out.l_minus = out.r_minus;
      break;
    }
    case ModelKind::antipt_dssh: {
      const double bx = p.gamma2 * std::sin(k);
      const double by = -(p.gamma1 + p.gamma2 * std::cos(k));
      const double db = p.delta_bar();
      const double r2 = bx * bx + by * by - db * db;
      if (!(r2 > 0))
        throw std::domain_error(
            "analytic_bloch_vectors: |delta_bar| >= |h(k)|, outside the analyzed regime");
      const double rk = std::sqrt(r2);
      const double sh = db / rk;                  // sinh(theta)
      const double ch = std::sqrt(1 + sh * sh);   // cosh(theta)
      const double phi = std::atan2(by, bx);
      const Complex np = 1.0 / std::sqrt(2.0 * (1.0 + i * sh));
      const Complex nm = 1.0 / std::sqrt(2.0 * (1.0 - i * sh));
      out.e_plus = i * rk - i * p.gamma_r();
      out.e_minus = -i * rk - i * p.gamma_r();
      out.r_plus = np * vec2(-i * ch * std::exp(-i * phi), 1.0 + i * sh);
      out.l_plus = np * vec2(-i * ch * std::exp(-i * phi), 1.0 - i * sh);
      out.r_minus = nm * vec2(i * ch * std::exp(-i * phi), 1.0 - i * sh);
      out.l_minus = nm * vec2(i * ch * std::exp(-i * phi), 1.0 + i * sh);
      break;
    }
    case ModelKind::nonreciprocal_dssh:
      throw std::invalid_argument(
          "analytic_bloch_vectors covers the hermitian, dssh and antipt families");
  }
  return out;
}

namespace {

// one eigenpair of a 2x2 matrix plus the matching left vector of H^dagger
struct Pair2 {
  Complex e;
  ComplexVector r, l;
};

// both branches, biorthonormalized (<L|R> = 1, L at unit norm)
std::array<Pair2, 2> eig2_biorthogonal(const ComplexMatrix& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex d = std::sqrt(tr * tr - 4.0 * det);
  std::array<Pair2, 2> out;
  for (int s = 0; s < 2; ++s) {
    const Complex e = (tr + (s == 0 ? d : -d)) / 2.0;
    // right vector: pick the better-conditioned row formula
    ComplexVector r(2), l(2);
    if (std::abs(m(0, 1)) + std::abs(e - m(0, 0)) >= std::abs(m(1, 0)) + std::abs(e - m(1, 1)))
      r << m(0, 1), e - m(0, 0);
    else
      r << e - m(1, 1), m(1, 0);
    // left vector solves H^dagger l = conj(e) l; rows of (H - e) give it
    if (std::abs(m(1, 0)) + std::abs(e - m(0, 0)) >= std::abs(m(0, 1)) + std::abs(e - m(1, 1)))
      l << std::conj(m(1, 0)), std::conj(e - m(0, 0));
    else
      l << std::conj(e - m(1, 1)), std::conj(m(0, 1));
    l.normalize();
    const Complex ip = l.dot(r);
    if (std::abs(ip) < 1e-300) throw DefectiveMatrixError("2x2 eigenpair is defective");
    out[s] = {e, ComplexVector(r / ip), l};
  }
  return out;
}

}  // namespace

WindingResult winding_from_field(const BlochField& field) {
  const std::size_t m = field.rights.size();
  if (m < 3 || field.lefts.size() != m)
    throw std::invalid_argument("winding_from_field: need matched left/right samples");
  // Biorthogonal Wilson accumulation around the closed loop: the ratio
  // <L_j|R_{j+1}> / <L_j|R_j> is insensitive to per-point normalization, and
  // single-valued gauge factors telescope out of the cyclic sum. Residual
  // per-point phase jumps (solver gauge) enter as exact multiples of 2 pi,
  // so the winding is recovered modulo 2 and reported in [-0.5, 1.5),
  // matching the quantized values 0 and 1 of the two-band families.
  const auto& r = field.rights;
  const auto& l = field.lefts;
  double phase = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t next = (j + 1) % m;
    phase += std::arg(l[j].dot(r[next]) / l[j].dot(r[j]));
  }
  const double nu_raw = phase / M_PI;
  WindingResult w;
  w.k_samples = static_cast<int>(m);
  w.nu = nu_raw - 2.0 * std::round((nu_raw - 0.5) / 2.0);
  w.residual = std::abs(w.nu - std::round(w.nu));
  return w;
}

WindingResult winding_number(ModelKind model, const LatticeParamsd& p, int n_k) {
  if (n_k < 64) throw std::invalid_argument("winding_number: n_k must be >= 64");
  p.validate();
  BlochField field;
  field.rights.reserve(n_k);
  field.lefts.reserve(n_k);
  Pair2 prev;
  for (int j = 0; j < n_k; ++j) {
    const double k = 2.0 * M_PI * j / n_k;
    const ComplexMatrix m = bloch(model, p, k);
    auto pairs = eig2_biorthogonal(m);
    if (std::abs(pairs[0].e - pairs[1].e) < 1e-9)
      throw std::runtime_error("winding undefined at phase boundary: gap closes on the k grid");
    int pick;
    if (j == 0) {
      const bool first = model == ModelKind::hermitian_ssh
                             ? pairs[0].e.real() >= pairs[1].e.real()
                             : pairs[0].e.imag() >= pairs[1].e.imag();
      pick = first ? 0 : 1;
    } else {
      pick = std::abs(prev.l.dot(pairs[0].r)) >= std::abs(prev.l.dot(pairs[1].r)) ? 0 : 1;
    }
    prev = pairs[pick];
    field.rights.push_back(prev.r);
    field.lefts.push_back(prev.l);
  }
  WindingResult w = winding_from_field(field);
  w.k_samples = n_k;
  return w;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::single_boundary: return "single_boundary";
    case Region::double_boundary: return "double_boundary";
    case Region::no_topology: return "no_topology";
  }
  return "?";
}

PhaseClassification phase_boundaries(double g_mag, double alpha, double gamma2) {
  if (!(gamma2 > 0)) throw std::invalid_argument("phase_boundaries: gamma2 must be positive");
  const double g2 = g_mag * g_mag;
  const double s2 = std::sin(2.0 * alpha);
  const double disc = gamma2 * gamma2 * gamma2 * gamma2 - g2 * g2 * s2 * s2;
  PhaseClassification c;
  c.x_plus = c.x_minus = kNaN;
  const double base = -g2 * std::cos(2.0 * alpha);
  if (disc < 0) {
    const double root = std::sqrt(-disc);
    c.a_plus = Complex(base, root);
    c.a_minus = Complex(base, -root);
    c.region = Region::no_topology;
    return c;
  }
  const double root = std::sqrt(disc);
  c.a_plus = base + root;
  c.a_minus = base - root;
  c.region = c.a_minus.real() >= 0 && c.a_plus.real() >= 0 ? Region::double_boundary
                                                           : Region::single_boundary;
  if (c.a_plus.real() >= 0) c.x_plus = std::sqrt(c.a_plus.real());
  if (c.a_minus.real() >= 0) c.x_minus = std::sqrt(c.a_minus.real());
  return c;
}

PhaseClassification classify_point(const LatticeParamsd& p) {
  p.validate();
  if (!(p.gamma2 > 0)) throw std::invalid_argument("classify_point: gamma2 must be positive");
  PhaseClassification c = phase_boundaries(p.g_mag, p.alpha, p.gamma2);
  const double g1sq = p.gamma1 * p.gamma1;
  const double gsq = p.g_mag * p.g_mag;
  const double ca = std::cos(p.alpha);
  const double lhs = std::sqrt((g1sq - gsq) * (g1sq - gsq) + 4.0 * gsq * g1sq * ca * ca);
  c.gamma_r_modes_predicted = lhs < p.gamma2 * p.gamma2;
  return c;
}

std::vector<PhaseDiagramRow> phase_diagram(const std::vector<double>& alpha_grid,
                                           const std::vector<double>& g_grid, double gamma2) {
  if (alpha_grid.empty() || g_grid.empty())
    throw std::invalid_argument("phase_diagram: grids must be nonempty");
  std::vector<PhaseDiagramRow> rows;
  rows.reserve(alpha_grid.size() * g_grid.size());
  for (double a : alpha_grid)
    for (double g : g_grid) rows.push_back({a, g, phase_boundaries(g, a, gamma2)});
  return rows;
}

}  // namespace dssh
