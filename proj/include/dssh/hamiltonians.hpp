#pragma once

#include "dssh/types.hpp"

namespace dssh {

/// Hermitian SSH chain, 2N x 2N real-symmetric (stored complex): t1 inside the
/// cell, t2 between B_i and A_{i+1}, wrap term B_N <-> A_1 under PBC.
template <typename Real = double>
MatrixXc<Real> build_hermitian_ssh(const LatticeParams<Real>& p) {
  p.validate();
  const int n = p.n_cells;
  MatrixXc<Real> h = MatrixXc<Real>::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    h(2 * i, 2 * i + 1) = p.t1;
    h(2 * i + 1, 2 * i) = p.t1;
    if (i + 1 < n) {
      h(2 * i + 1, 2 * i + 2) = p.t2;
      h(2 * i + 2, 2 * i + 1) = p.t2;
    }
  }
  if (p.boundary == Boundary::periodic) {
    h(2 * n - 1, 0) += p.t2;
    h(0, 2 * n - 1) += p.t2;
  }
  return h;
}

/// Dissipatively coupled SSH chain: diagonal -(Delta_site) - i Gamma_r,
/// off-diagonal i Gamma_1 (intra-cell) and i Gamma_2 (inter-cell), both
/// directions. Detuning sign follows the printed real-space convention; all
/// reference figures use delta1 = delta2 = 0 where the diagonal is -i Gamma_r.
template <typename Real = double>
MatrixXc<Real> build_dssh(const LatticeParams<Real>& p) {
  p.validate();
  using C = std::complex<Real>;
  const int n = p.n_cells;
  const Real gr = p.gamma_r();
  MatrixXc<Real> h = MatrixXc<Real>::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    h(2 * i, 2 * i) = C(-p.delta1, -gr);
    h(2 * i + 1, 2 * i + 1) = C(-p.delta2, -gr);
    h(2 * i, 2 * i + 1) = C(0, p.gamma1);
    h(2 * i + 1, 2 * i) = C(0, p.gamma1);
    if (i + 1 < n) {
      h(2 * i + 1, 2 * i + 2) = C(0, p.gamma2);
      h(2 * i + 2, 2 * i + 1) = C(0, p.gamma2);
    }
  }
  if (p.boundary == Boundary::periodic) {
    h(2 * n - 1, 0) += C(0, p.gamma2);
    h(0, 2 * n - 1) += C(0, p.gamma2);
  }
  return h;
}

namespace detail {

template <typename Real>
void check_nonreciprocal(const LatticeParams<Real>& p, ChainTermination term) {
  p.validate();
  if (term != ChainTermination::full && p.boundary == Boundary::periodic)
    throw std::invalid_argument("broken chain terminations require open boundary");
}

}  // namespace detail

/// Non-reciprocal DSSH chain. Intra-cell couplings are i Gamma_- (b_i -> c_i
/// row entry) and i Gamma_+ (c_i -> b_i row entry); inter-cell i Gamma_2 is
/// symmetric. Diagonal is -i Gamma_r with +delta_bar on b sites and
/// -delta_bar on c sites. Dimension 2N for the full chain and 2N-1 for the
/// broken ones (broken_b removes c_N, broken_c removes b_1). Reduces
/// entrywise to build_dssh when |G| = 0 and delta_bar = 0.
template <typename Real = double>
MatrixXc<Real> build_nonreciprocal(const LatticeParams<Real>& p,
                                   ChainTermination term = ChainTermination::full) {
  detail::check_nonreciprocal(p, term);
  using C = std::complex<Real>;
  const C i(0, 1);
  const int n = p.n_cells;
  const Real gr = p.gamma_r();
  const Real db = p.delta_bar();
  const C gm = p.gamma_minus(), gp = p.gamma_plus();

  const int dim = term == ChainTermination::full ? 2 * n : 2 * n - 1;
  // site index of (cell, sublattice); -1 when the site is absent
  auto b_site = [&](int cell) { return term == ChainTermination::broken_c ? (cell > 0 ? 2 * cell - 1 : -1) : 2 * cell; };
  auto c_site = [&](int cell) {
    if (term == ChainTermination::broken_b) return cell + 1 < n ? 2 * cell + 1 : -1;
    return term == ChainTermination::broken_c ? 2 * cell : 2 * cell + 1;
  };

  MatrixXc<Real> h = MatrixXc<Real>::Zero(dim, dim);
  for (int cell = 0; cell < n; ++cell) {
    const int b = b_site(cell), c = c_site(cell);
    if (b >= 0) h(b, b) = C(db, -gr);
    if (c >= 0) h(c, c) = C(-db, -gr);
    if (b >= 0 && c >= 0) {
      h(b, c) = i * gm;
      h(c, b) = i * gp;
    }
    const int bn = cell + 1 < n ? b_site(cell + 1) : -1;
    if (c >= 0 && bn >= 0) {
      h(c, bn) = i * p.gamma2;
      h(bn, c) = i * p.gamma2;
    }
  }
  if (p.boundary == Boundary::periodic) {
    h(dim - 1, 0) += i * p.gamma2;
    h(0, dim - 1) += i * p.gamma2;
  }
  return h;
}

/// Tridiagonal view (diag, upper, lower) of the open non-reciprocal chain,
/// for O(N) eigenvalue counting at large N.
template <typename Real = double>
struct TridiagonalChain {
  VectorXc<Real> diag, upper, lower;
};

template <typename Real = double>
TridiagonalChain<Real> build_nonreciprocal_tridiagonal(const LatticeParams<Real>& p,
                                                       ChainTermination term = ChainTermination::full) {
  detail::check_nonreciprocal(p, term);
  if (p.boundary != Boundary::open)
    throw std::invalid_argument("tridiagonal form exists only for open chains");
  using C = std::complex<Real>;
  const C i(0, 1);
  const int n = p.n_cells;
  const int dim = term == ChainTermination::full ? 2 * n : 2 * n - 1;
  TridiagonalChain<Real> t;
  t.diag.resize(dim);
  t.upper.resize(dim - 1);
  t.lower.resize(dim - 1);
  // bond sequence along the chain: (Gm,Gp), G2, (Gm,Gp), G2, ...
  // broken_c starts mid-cell, i.e. with a G2 bond.
  const bool start_intra = term != ChainTermination::broken_c;
  const Real gr = p.gamma_r();
  const Real db = p.delta_bar();
  for (int s = 0; s < dim; ++s) {
    const bool b_sub = start_intra ? s % 2 == 0 : s % 2 == 1;
    t.diag(s) = C(b_sub ? db : -db, -gr);
  }
  for (int s = 0; s + 1 < dim; ++s) {
    const bool intra = start_intra ? s % 2 == 0 : s % 2 == 1;
    if (intra) {
      t.upper(s) = i * p.gamma_minus();
      t.lower(s) = i * p.gamma_plus();
    } else {
      t.upper(s) = i * p.gamma2;
      t.lower(s) = i * p.gamma2;
    }
  }
  return t;
}

/// 2x2 Bloch matrix of the requested family at momentum k.
///
/// Off-diagonal h(k) = i Gamma_1 + i Gamma_2 e^{-ik} for the dissipative
/// families (t's for the Hermitian one); the non-reciprocal family carries
/// i Gamma_- + i Gamma_2 e^{-ik} above and i Gamma_+ + i Gamma_2 e^{ik}
/// below. The dssh diagonal keeps the real-space detuning sign so PBC
/// real-space and Bloch spectra agree for every parameter set.
template <typename Real = double>
MatrixXc<Real> bloch(ModelKind model, const LatticeParams<Real>& p, Real k) {
  p.validate();
  using C = std::complex<Real>;
  const C i(0, 1);
  const Real gr = p.gamma_r();
  const Real db = p.delta_bar();
  MatrixXc<Real> h(2, 2);
  switch (model) {
    case ModelKind::hermitian_ssh: {
      const C off = p.t1 + p.t2 * std::exp(-i * k);
      h << C(0), off, std::conj(off), C(0);
      break;
    }
    case ModelKind::dssh: {
      const C off = i * p.gamma1 + i * p.gamma2 * std::exp(-i * k);
      h << C(-p.delta1, -gr), off, -std::conj(off), C(-p.delta2, -gr);
      break;
    }
    case ModelKind::antipt_dssh: {
      const C off = i * p.gamma1 + i * p.gamma2 * std::exp(-i * k);
      h << C(db, -gr), off, -std::conj(off), C(-db, -gr);
      break;
    }
    case ModelKind::nonreciprocal_dssh: {
      h << C(db, -gr), i * p.gamma_minus() + i * p.gamma2 * std::exp(-i * k),
          i * p.gamma_plus() + i * p.gamma2 * std::exp(i * k), C(-db, -gr);
      break;
    }
  }
  return h;
}

}  // namespace dssh
