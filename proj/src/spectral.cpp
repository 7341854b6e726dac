#include "dssh/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dssh {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void check_square_finite(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("eigendecomposition requires a nonempty square matrix");
  if (!h.allFinite()) throw std::invalid_argument("matrix entries must be finite");
}

struct EigPairs {
  Eigen::VectorXcd values;
  ComplexMatrix vectors;  // unit columns
};

// Dense eigendecomposition via complex Schur, with scaled back-substitution
// for the vectors. The stock back-substitution overflows on strongly
// non-normal chains (skin effect), where triangular pivots reach ~eps while
// the couplings stay O(1); rescaling the partial solution keeps every column
// finite, as LAPACK's ztrevc does.
EigPairs schur_eigenpairs(const ComplexMatrix& h) {
  const Index n = h.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(h, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw std::runtime_error("Schur iteration failed to converge");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const double tnorm = t.cwiseAbs().maxCoeff();
  const double smlnum = std::max(tnorm, 1.0) * std::numeric_limits<double>::epsilon();

  EigPairs out;
  out.values = t.diagonal();
  out.vectors.resize(n, n);
  ComplexVector x(n);
  for (Index k = 0; k < n; ++k) {
    x.setZero();
    x(k) = 1.0;
    for (Index i = k - 1; i >= 0; --i) {
      Complex s = 0;
      for (Index j = i + 1; j <= k; ++j) s += t(i, j) * x(j);
      Complex piv = t(i, i) - t(k, k);
      if (std::abs(piv) < smlnum) piv = smlnum;
      x(i) = -s / piv;
      const double mag = std::abs(x(i));
      if (mag > 1e100) x.segment(i, k - i + 1) /= mag;
    }
    out.vectors.col(k) = u.leftCols(k + 1) * x.head(k + 1);
    out.vectors.col(k).normalize();
  }
  return out;
}

}  // namespace

Spectrum eig_right(const ComplexMatrix& h) {
  check_square_finite(h);
  const EigPairs es = schur_eigenpairs(h);

  const Index n = h.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return lex_less(es.values(a), es.values(b)); });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.right_vectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    s.eigenvalues(j) = es.values(order[j]);
    s.right_vectors.col(j) = es.vectors.col(order[j]);
  }
  return s;
}

Spectrum eig_biorthogonal(const ComplexMatrix& h) {
  check_square_finite(h);
  const Index n = h.rows();

  const EigPairs right = schur_eigenpairs(h);
  const EigPairs left = schur_eigenpairs(h.adjoint().eval());

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return lex_less(right.values(a), right.values(b)); });

  Spectrum s;
  s.eigenvalues.resize(n);
  s.right_vectors.resize(n, n);
  s.left_vectors.resize(n, n);

  // Greedy pairing by conjugate eigenvalue; near-ties resolved by overlap.
  std::vector<bool> used(n, false);
  const double scale = right.values.cwiseAbs().maxCoeff() + 1.0;
  for (Index j = 0; j < n; ++j) {
    const Index rj = order[j];
    const Complex target = std::conj(right.values(rj));
    double dmin = std::numeric_limits<double>::infinity();
    for (Index q = 0; q < n; ++q)
      if (!used[q]) dmin = std::min(dmin, std::abs(left.values(q) - target));
    Index best = -1;
    double best_ov = -1.0;
    for (Index q = 0; q < n; ++q) {
      if (used[q]) continue;
      if (std::abs(left.values(q) - target) > dmin + 1e-12 * scale) continue;
      const double ov = std::abs(left.vectors.col(q).dot(right.vectors.col(rj)));
      if (ov > best_ov) {
        best_ov = ov;
        best = q;
      }
    }
    used[best] = true;
    s.eigenvalues(j) = right.values(rj);
    s.right_vectors.col(j) = right.vectors.col(rj);
    s.left_vectors.col(j) = left.vectors.col(best);
  }

  // Re-biorthogonalize exactly degenerate clusters: L_c <- L_c G^{-dagger}
  // with G = L_c^dagger R_c, so cross terms vanish inside the cluster.
  const double cluster_tol = 1e-12 * scale;
  for (Index lo = 0; lo < n;) {
    Index hi = lo + 1;
    while (hi < n && std::abs(s.eigenvalues(hi) - s.eigenvalues(lo)) < cluster_tol) ++hi;
    if (hi - lo > 1) {
      const auto rc = s.right_vectors.middleCols(lo, hi - lo);
      auto lc = s.left_vectors.middleCols(lo, hi - lo);
      ComplexMatrix g = lc.adjoint() * rc;
      Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
      if (svd.singularValues().minCoeff() < 1e-10)
        throw DefectiveMatrixError("exceptional point: degenerate cluster is defective");
      lc = lc * g.inverse().adjoint();
    }
    lo = hi;
  }

  // Pairing quality at unit norms, then the normalization convention:
  // L at unit norm, R rescaled so <L|R> = 1. Skin-effect chains reach
  // pairing overlaps of ~1e-15 while staying diagonalizable, so only a
  // numerically vanishing overlap is treated as defective here; degenerate
  // clusters were already screened above. min_pairing_overlap stays
  // available as the conditioning probe (values below ~1e-6 mean the
  // eigensystem is exceptional-point adjacent).
  s.min_pairing_overlap = 1.0;
  for (Index j = 0; j < n; ++j) {
    ComplexVector l = s.left_vectors.col(j);
    ComplexVector r = s.right_vectors.col(j);
    const double ov = std::abs(l.normalized().dot(r.normalized()));
    s.min_pairing_overlap = std::min(s.min_pairing_overlap, ov);
    if (ov < 1e-250)
      throw DefectiveMatrixError("exceptional point / defective pairing: |<L|R>| = " +
                                 std::to_string(ov) + " at eigenvalue index " + std::to_string(j));
    l.normalize();
    const Complex ip = l.dot(r);  // Eigen's dot conjugates the left argument
    s.left_vectors.col(j) = l;
    s.right_vectors.col(j) = r / ip;
  }
  s.biorthonormal = true;
  return s;
}

std::vector<Index> gamma_r_modes(const Spectrum& spec, double gamma_r, double tol) {
  if (!(tol > 0) || !std::isfinite(tol))
    throw std::invalid_argument("gamma_r_modes: tol must be positive and finite");
  std::vector<Index> idx;
  const Complex target(0, -gamma_r);
  for (Index j = 0; j < spec.eigenvalues.size(); ++j)
    if (std::abs(spec.eigenvalues(j) - target) < tol) idx.push_back(j);
  return idx;
}

namespace {

// closed-form 2x2 eigenvalues
std::pair<Complex, Complex> eig2(const ComplexMatrix& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex d = std::sqrt(tr * tr - 4.0 * det);
  return {(tr + d) / 2.0, (tr - d) / 2.0};
}

}  // namespace

std::vector<BandPoint> band_sweep(ModelKind model, const LatticeParamsd& p, int n_k) {
  if (n_k < 2) throw std::invalid_argument("band_sweep: n_k must be >= 2");
  std::vector<BandPoint> out;
  out.reserve(n_k + 1);
  for (int j = 0; j <= n_k; ++j) {
    const double k = 2.0 * M_PI * j / n_k;
    auto [e1, e2] = eig2(bloch(model, p, k));
    if (j == 0) {
      // branch seed: higher real part for the Hermitian family, higher
      // imaginary part for the dissipative ones
      const bool swap = model == ModelKind::hermitian_ssh ? e2.real() > e1.real()
                                                          : e2.imag() > e1.imag();
      if (swap) std::swap(e1, e2);
    } else {
      if (std::abs(e1 - out.back().e_plus) > std::abs(e2 - out.back().e_plus)) std::swap(e1, e2);
    }
    out.push_back({k, e1, e2});
  }
  return out;
}

int count_eigenvalues_in_disk(const TridiagonalChain<double>& t, Complex center,
                              double radius, int n_contour) {
  if (!(radius > 0)) throw std::invalid_argument("count_eigenvalues_in_disk: radius must be positive");
  const Index n = t.diag.size();
  for (int attempt = 0; attempt < 4; ++attempt, n_contour *= 2) {
    double total = 0.0;
    double prev = 0.0;
    bool ok = true;
    for (int j = 0; j <= n_contour && ok; ++j) {
      const double th = 2.0 * M_PI * j / n_contour;
      const Complex z = center + radius * Complex(std::cos(th), std::sin(th));
      // det(T - z) by the scaled three-term recurrence
      Complex pm1(1, 0), pc = t.diag(0) - z;
      double sc = std::abs(pc);
      if (sc == 0.0) { ok = false; break; }
      pc /= sc;
      pm1 /= sc;
      for (Index i = 1; i < n; ++i) {
        Complex pn = (t.diag(i) - z) * pc - t.upper(i - 1) * t.lower(i - 1) * pm1;
        sc = std::abs(pn);
        if (sc == 0.0) { ok = false; break; }
        pm1 = pc / sc;
        pc = pn / sc;
      }
      if (!ok) break;
      const double a = std::arg(pc);
      if (j > 0) {
        double d = a - prev;
        while (d > M_PI) d -= 2.0 * M_PI;
        while (d < -M_PI) d += 2.0 * M_PI;
        if (std::abs(d) > 2.9) { ok = false; break; }
        total += d;
      }
      prev = a;
    }
    if (ok) return static_cast<int>(std::lround(total / (2.0 * M_PI)));
  }
  throw std::runtime_error("count_eigenvalues_in_disk: contour passes too close to an eigenvalue");
}

Eigen::VectorXcd real_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("real_eigenvalues: nonempty square matrix required");
  Eigen::MatrixXd a = m;
  const Index n = a.rows();
  // LAPACK-style two-sided diagonal equilibration by powers of two
  for (int sweep = 0; sweep < 16; ++sweep) {
    bool converged = true;
    for (Index i = 0; i < n; ++i) {
      double r = 0, c = 0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        r += std::abs(a(i, j));
        c += std::abs(a(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (f != 1.0) {
        a.col(i) *= f;
        a.row(i) /= f;
        converged = false;
      }
    }
    if (converged) break;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("real eigensolver failed to converge");
  return es.eigenvalues();
}

double hausdorff_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() == 0 || b.size() == 0)
    throw std::invalid_argument("hausdorff_distance: empty spectrum");
  auto directed = [](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    double worst = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < y.size(); ++j) best = std::min(best, std::abs(x(i) - y(j)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace dssh
