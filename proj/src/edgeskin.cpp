#include "dssh/edgeskin.hpp"

#include "dssh/hamiltonians.hpp"

#include <cmath>

namespace dssh {

namespace {

void require_edge_params(const LatticeParamsd& p, bool need_plus, bool need_minus) {
  p.validate();
  if (!(p.gamma2 > 0)) throw std::invalid_argument("edge states require gamma2 > 0");
  const double scale = std::max({p.gamma1, p.gamma2, p.g_mag, 1.0});
  if (need_plus && std::abs(p.gamma_plus()) < 1e-12 * scale)
    throw std::domain_error("maximally non-reciprocal (Gamma_+ = 0); analytic state degenerate");
  if (need_minus && std::abs(p.gamma_minus()) < 1e-12 * scale)
    throw std::domain_error("maximally non-reciprocal (Gamma_- = 0); analytic state degenerate");
}

Complex norm_product_of(Complex z, int n) {
  const Complex zn = std::pow(z, n);
  if (std::abs(zn - 1.0) < 1e-12)
    throw std::domain_error("normalization singularity: Z^N = 1");
  return std::pow(z, n + 1) * (1.0 / z - 1.0) / (1.0 - zn);
}

// extended-precision complex helpers for the residual evaluation
struct Cq {
  __float128 re, im;
};
Cq cq(Complex v) { return {static_cast<__float128>(v.real()), static_cast<__float128>(v.imag())}; }
Cq add(Cq a, Cq b) { return {a.re + b.re, a.im + b.im}; }
Cq mul(Cq a, Cq b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cq neg(Cq a) { return {-a.re, -a.im}; }
Cq div(Cq a, Cq b) {
  const __float128 n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
__float128 abs2(Cq a) { return a.re * a.re + a.im * a.im; }

// components of the <L|R>=1-normalized right states in extended precision:
// value(site) for psi_R^{sign} of the full chain
std::vector<Cq> psi_r_quad(const LatticeParamsd& p, int sign) {
  const int n = p.n_cells;
  const Complex z = p.z_factor();
  const Cq nr = cq(std::sqrt(norm_product_of(z, n)));
  const Cq inv_sqrt2 = cq(Complex(1.0 / std::sqrt(2.0)));
  // the geometric ratios must be formed in extended precision: a double
  // rounding here breaks the interior cancellation by ~eps * |Z|^{-N}
  const Cq rb_ratio = div(neg(cq(Complex(p.gamma2, 0))), cq(p.gamma_plus()));
  const Cq rc_ratio = div(neg(cq(Complex(p.gamma2, 0))), cq(p.gamma_minus()));
  std::vector<Cq> v(2 * n, Cq{0, 0});
  // b components: (-G2/G+)^{N-m} on b_{m+1}; build from b_N backwards
  Cq acc = mul(nr, rb_ratio);
  for (int m = n - 1; m >= 0; --m) {
    v[2 * m] = mul(acc, inv_sqrt2);
    if (m > 0) acc = mul(acc, rb_ratio);
  }
  // c components: sign * (-G2/G-)^{m} on c_m
  acc = mul(nr, rc_ratio);
  const Cq sg = cq(Complex(sign, 0));
  for (int m = 1; m <= n; ++m) {
    v[2 * m - 1] = mul(mul(acc, inv_sqrt2), sg);
    if (m < n) acc = mul(acc, rc_ratio);
  }
  return v;
}

// || (H_full + i Gamma_r) psi || with the tridiagonal stencil in quad precision
double residual_quad(const LatticeParamsd& p, int sign) {
  const std::vector<Cq> v = psi_r_quad(p, sign);
  const int dim = static_cast<int>(v.size());
  const Cq i_gm = cq(Complex(0, 1) * p.gamma_minus());
  const Cq i_gp = cq(Complex(0, 1) * p.gamma_plus());
  const Cq i_g2 = cq(Complex(0, 1) * p.gamma2);
  __float128 acc = 0;
  for (int s = 0; s < dim; ++s) {
    // (H + i Gamma_r I) row s: +-delta_bar on the diagonal plus the two bonds
    const Cq db = cq(Complex(s % 2 == 0 ? p.delta_bar() : -p.delta_bar(), 0));
    Cq r = mul(db, v[s]);
    if (s % 2 == 0) {  // b site: couples c of same cell (Gm) and c of previous cell (G2)
      r = add(r, mul(i_gm, v[s + 1]));
      if (s > 0) r = add(r, mul(i_g2, v[s - 1]));
    } else {  // c site: couples b of same cell (Gp) and b of next cell (G2)
      r = add(r, mul(i_gp, v[s - 1]));
      if (s + 1 < dim) r = add(r, mul(i_g2, v[s + 1]));
    }
    acc += abs2(r);
  }
  return static_cast<double>(std::sqrt(static_cast<double>(acc)));
}

}  // namespace

BrokenChainStates broken_chain_states(const LatticeParamsd& p, ChainTermination which) {
  if (which == ChainTermination::full)
    throw std::invalid_argument("broken_chain_states: termination must be broken_b or broken_c");
  const bool is_b = which == ChainTermination::broken_b;
  require_edge_params(p, is_b, !is_b);
  const int n = p.n_cells;
  const Complex z = p.z_factor();
  BrokenChainStates out;
  out.z = z;
  out.norm_product = norm_product_of(z, n);
  const Complex nr = std::sqrt(out.norm_product);
  const Complex nl = std::conj(nr);

  out.right = ComplexVector::Zero(2 * n - 1);
  out.left = ComplexVector::Zero(2 * n - 1);
  if (is_b) {
    // sites (b1, c1, ..., b_N); components on b_{m+1} with exponent N-m
    const Complex qr = -p.gamma2 / p.gamma_plus();
    const Complex ql = -p.gamma2 / std::conj(p.gamma_minus());
    for (int m = 0; m < n; ++m) {
      out.right(2 * m) = nr * std::pow(qr, n - m);
      out.left(2 * m) = nl * std::pow(ql, n - m);
    }
  } else {
    // sites (c1, b2, c2, ..., c_N); components on c_m with exponent m
    const Complex qr = -p.gamma2 / p.gamma_minus();
    const Complex ql = -p.gamma2 / std::conj(p.gamma_plus());
    for (int m = 1; m <= n; ++m) {
      out.right(2 * m - 2) = nr * std::pow(qr, m);
      out.left(2 * m - 2) = nl * std::pow(ql, m);
    }
  }
  return out;
}

EdgeStateSet full_chain_states(const LatticeParamsd& p) {
  require_edge_params(p, true, true);
  const int n = p.n_cells;
  const BrokenChainStates b = broken_chain_states(p, ChainTermination::broken_b);
  const BrokenChainStates c = broken_chain_states(p, ChainTermination::broken_c);

  EdgeStateSet out;
  out.r_b = b.right;
  out.l_b = b.left;
  out.r_c = c.right;
  out.l_c = c.left;
  out.z = b.z;
  out.norm_product = b.norm_product;
  out.eigenstate_valid = std::abs(b.z) < 1.0;

  // embed: broken_b spans sites 0..2N-2, broken_c spans sites 1..2N-1
  ComplexVector eb = ComplexVector::Zero(2 * n), ec = ComplexVector::Zero(2 * n);
  ComplexVector fb = ComplexVector::Zero(2 * n), fc = ComplexVector::Zero(2 * n);
  eb.head(2 * n - 1) = b.right;
  fb.head(2 * n - 1) = b.left;
  ec.tail(2 * n - 1) = c.right;
  fc.tail(2 * n - 1) = c.left;
  const double s2 = std::sqrt(2.0);
  out.psi_r_plus = (eb + ec) / s2;
  out.psi_r_minus = (eb - ec) / s2;
  out.psi_l_plus = (fb + fc) / s2;
  out.psi_l_minus = (fb - fc) / s2;

  out.residual_norm = std::max(residual_quad(p, +1), residual_quad(p, -1));
  return out;
}

std::vector<Complex> projection_profile(const ComplexVector& left, const ComplexVector& right,
                                        int n_cells, ChainTermination layout) {
  if (left.size() != right.size()) throw std::invalid_argument("projection_profile: size mismatch");
  const Index dim = right.size();
  if (dim != 2 * n_cells && dim != 2 * n_cells - 1)
    throw std::invalid_argument("projection_profile: vector length must be 2N or 2N-1");
  if (dim == 2 * n_cells - 1 && layout == ChainTermination::full)
    throw std::invalid_argument("projection_profile: broken-chain vector needs its layout");
  const Complex ip = left.dot(right);
  if (std::abs(ip) == 0.0)
    throw DefectiveMatrixError("self-orthogonal mode: <L|R> = 0 (exceptional-point signature)");
  std::vector<Complex> pi(n_cells, Complex(0, 0));
  const bool shift = dim == 2 * n_cells - 1 && layout == ChainTermination::broken_c;
  for (Index s = 0; s < dim; ++s) {
    const Index site = shift ? s + 1 : s;  // broken_c starts at c_1, site index 1
    pi[site / 2] += std::conj(left(s)) * right(s) / ip;
  }
  return pi;
}

LocalizationReport skin_report(const Spectrum& spec) {
  const Index d = spec.right_vectors.rows();
  if (d == 0 || spec.right_vectors.cols() != spec.eigenvalues.size())
    throw std::invalid_argument("skin_report: spectrum carries no right vectors");
  LocalizationReport rep;
  const Index n_edge = std::max<Index>(1, d / 10);
  int left_count = 0;
  for (Index m = 0; m < spec.eigenvalues.size(); ++m) {
    Eigen::VectorXd w = spec.right_vectors.col(m).cwiseAbs2();
    w /= w.sum();
    ModeLocalization loc{};
    for (Index s = 0; s < d; ++s) loc.center_of_mass += w(s) * (static_cast<double>(s) / d);
    loc.edge_weight_left = w.head(n_edge).sum();
    loc.edge_weight_right = w.tail(n_edge).sum();
    loc.participation_ratio = 1.0 / (d * w.squaredNorm());
    if (loc.center_of_mass < 0.25) ++left_count;
    rep.modes.push_back(loc);
  }
  rep.left_localized_fraction = static_cast<double>(left_count) / spec.eigenvalues.size();
  return rep;
}

}  // namespace dssh
