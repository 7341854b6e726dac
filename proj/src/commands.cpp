#include "dssh/commands.hpp"

#include "dssh/edgeskin.hpp"
#include "dssh/hamiltonians.hpp"
#include "dssh/spectral.hpp"
#include "dssh/topology.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace dssh {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

/// real-space matrix of the configured family and boundary
ComplexMatrix real_space_matrix(ModelKind model, const LatticeParamsd& p, ChainTermination term) {
  switch (model) {
    case ModelKind::hermitian_ssh:
      return build_hermitian_ssh(p);
    case ModelKind::dssh:
      return build_dssh(p);
    case ModelKind::antipt_dssh: {
      LatticeParamsd q = p;
      q.g_mag = 0;
      return build_nonreciprocal(q, term);
    }
    case ModelKind::nonreciprocal_dssh:
      return build_nonreciprocal(p, term);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXcd sorted_eigenvalues(const ComplexMatrix& h) {
  Eigen::VectorXcd e = Eigen::ComplexEigenSolver<ComplexMatrix>(h, false).eigenvalues();
  std::sort(e.begin(), e.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return e;
}

Table spectrum_table(const Eigen::VectorXcd& e) {
  Table t;
  t.header = {"index", "re", "im", "abs"};
  for (Index j = 0; j < e.size(); ++j)
    t.rows.push_back({format_number(static_cast<double>(j)), format_number(e(j).real()),
                      format_number(e(j).imag()), format_number(std::abs(e(j)))});
  return t;
}

}  // namespace

FileList cmd_spectrum(const RunConfig& cfg, const RunOptions& opt) {
  const ModelKind model = cfg.model();
  const ChainTermination term = cfg.termination();
  LatticeParamsd p = cfg.lattice_params();
  ensure_directory(opt.out_dir);
  FileList files;

  LatticeParamsd pobc = p, ppbc = p;
  pobc.boundary = Boundary::open;
  ppbc.boundary = Boundary::periodic;
  files.push_back(write_table(spectrum_table(sorted_eigenvalues(real_space_matrix(model, pobc, term))),
                              opt.out_dir / "spectrum_obc", opt.format));
  if (term == ChainTermination::full)
    files.push_back(
        write_table(spectrum_table(sorted_eigenvalues(real_space_matrix(model, ppbc, ChainTermination::full))),
                    opt.out_dir / "spectrum_pbc", opt.format));

  if (cfg.has("sweep_step") || cfg.has("sweep_start") || cfg.has("sweep_stop")) {
    const std::string param = cfg.get_string("sweep_param", "gamma1");
    if (param != "gamma1")
      throw ConfigError("sweep_param: only gamma1 sweeps are supported, got '" + param + "'");
    const double start = cfg.get_double("sweep_start");
    const double stop = cfg.get_double("sweep_stop");
    const double step = cfg.get_double("sweep_step");
    if (!(step > 0) || stop < start) throw ConfigError("invalid sweep range");
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count < 1) throw ConfigError("empty sweep list");

    std::vector<Eigen::VectorXcd> sweeps(count);
    parallel_for(count, opt.threads, [&](int j) {
      LatticeParamsd q = p;
      q.gamma1 = start + j * step;
      sweeps[j] = sorted_eigenvalues(real_space_matrix(model, q, term));
    });
    Table t;
    t.header = {"param", "index", "re", "im", "abs"};
    for (int j = 0; j < count; ++j) {
      const std::string g1 = format_number(start + j * step);
      for (Index m = 0; m < sweeps[j].size(); ++m)
        t.rows.push_back({g1, format_number(static_cast<double>(m)),
                          format_number(sweeps[j](m).real()), format_number(sweeps[j](m).imag()),
                          format_number(std::abs(sweeps[j](m)))});
    }
    files.push_back(write_table(t, opt.out_dir / "sweep", opt.format));
  }
  return files;
}

FileList cmd_phase_diagram(const RunConfig& cfg, const RunOptions& opt) {
  const double gamma2 = cfg.get_double("gamma2");
  const int na = cfg.get_int("alpha_count", 101);
  const int ng = cfg.get_int("g_count", 101);
  if (na < 1 || ng < 1) throw ConfigError("alpha_count and g_count must be positive");
  const double a0 = cfg.get_double("alpha_start", 0.0);
  const double a1 = cfg.get_double("alpha_stop", M_PI);
  const double g0 = cfg.get_double("g_start", 0.0);
  const double g1 = cfg.get_double("g_stop", 4.0);

  std::vector<double> alphas(na), gs(ng);
  for (int i = 0; i < na; ++i) alphas[i] = na == 1 ? a0 : a0 + (a1 - a0) * i / (na - 1);
  for (int i = 0; i < ng; ++i) gs[i] = ng == 1 ? g0 : g0 + (g1 - g0) * i / (ng - 1);

  std::vector<PhaseDiagramRow> rows(static_cast<std::size_t>(na) * ng);
  parallel_for(na, opt.threads, [&](int i) {
    for (int j = 0; j < ng; ++j)
      rows[static_cast<std::size_t>(i) * ng + j] = {alphas[i], gs[j],
                                                    phase_boundaries(gs[j], alphas[i], gamma2)};
  });

  Table t;
  t.header = {"alpha", "g", "a_plus", "a_minus", "region"};
  for (const auto& r : rows)
    t.rows.push_back({format_number(r.alpha), format_number(r.g_mag),
                      format_complex(r.cls.a_plus), format_complex(r.cls.a_minus),
                      region_name(r.cls.region)});
  ensure_directory(opt.out_dir);
  return {write_table(t, opt.out_dir / "phase_diagram", opt.format)};
}

FileList cmd_edge_modes(const RunConfig& cfg, const RunOptions& opt) {
  LatticeParamsd p = cfg.lattice_params();
  const ChainTermination term = cfg.termination();
  const double tol = cfg.get_double("gamma_r_tol", 1e-3);
  ensure_directory(opt.out_dir);
  FileList files;

  Table t;
  t.header = {"mode", "cell", "abs_pi"};

  if (term != ChainTermination::full) {
    const BrokenChainStates st = broken_chain_states(p, term);
    const auto pi = projection_profile(st.left, st.right, p.n_cells, term);
    for (int n = 0; n < p.n_cells; ++n)
      t.rows.push_back({"0", format_number(n + 1), format_number(std::abs(pi[n]))});
    files.push_back(write_table(t, opt.out_dir / "projection_profiles", opt.format));
    files.push_back(write_json_object(
        {{"termination", json_string(cfg.get_string("termination", "full"))},
         {"z_re", json_number(st.z.real())},
         {"z_im", json_number(st.z.imag())},
         {"norm_product_re", json_number(st.norm_product.real())},
         {"norm_product_im", json_number(st.norm_product.imag())},
         {"edge_mode_count", json_number(1)}},
        opt.out_dir / "edge_modes.json"));
    return files;
  }

  const ComplexMatrix h = build_nonreciprocal(p, ChainTermination::full);
  const Spectrum spec = eig_biorthogonal(h);
  const auto flagged = gamma_r_modes(spec, p.gamma_r(), tol);
  for (Index m = 0; m < spec.eigenvalues.size(); ++m) {
    const auto pi =
        projection_profile(spec.left_vectors.col(m), spec.right_vectors.col(m), p.n_cells);
    for (int n = 0; n < p.n_cells; ++n)
      t.rows.push_back({format_number(static_cast<double>(m)), format_number(n + 1),
                        format_number(std::abs(pi[n]))});
  }
  files.push_back(write_table(t, opt.out_dir / "projection_profiles", opt.format));

  std::vector<double> flagged_d(flagged.begin(), flagged.end());
  std::vector<JsonField> fields = {
      {"edge_mode_count", json_number(static_cast<double>(flagged.size()))},
      {"edge_modes", json_array(flagged_d)},
      {"gamma_r", json_number(p.gamma_r())},
      {"gamma_r_tol", json_number(tol)}};
  const double edge_scale = std::max({p.gamma1, p.gamma2, p.g_mag, 1.0});
  if (p.gamma2 > 0 && std::abs(p.gamma_plus()) >= 1e-12 * edge_scale &&
      std::abs(p.gamma_minus()) >= 1e-12 * edge_scale) {
    const EdgeStateSet es = full_chain_states(p);
    fields.push_back({"z_re", json_number(es.z.real())});
    fields.push_back({"z_im", json_number(es.z.imag())});
    fields.push_back({"z_abs", json_number(std::abs(es.z))});
    fields.push_back({"eigenstate_valid", es.eigenstate_valid ? "true" : "false"});
    fields.push_back({"analytic_residual_norm", json_number(es.residual_norm)});
  }
  files.push_back(write_json_object(fields, opt.out_dir / "edge_modes.json"));
  return files;
}

FileList cmd_skin(const RunConfig& cfg, const RunOptions& opt) {
  LatticeParamsd p = cfg.lattice_params();
  ensure_directory(opt.out_dir);
  const ComplexMatrix h = build_nonreciprocal(p, cfg.termination());
  const Spectrum spec = eig_right(h);  // defective-adjacent chains stay usable
  const LocalizationReport rep = skin_report(spec);

  Table t;
  t.header = {"mode", "site", "abs_component"};
  for (Index m = 0; m < spec.eigenvalues.size(); ++m)
    for (Index s = 0; s < spec.right_vectors.rows(); ++s)
      t.rows.push_back({format_number(static_cast<double>(m)), format_number(static_cast<double>(s)),
                        format_number(std::abs(spec.right_vectors(s, m)))});
  FileList files{write_table(t, opt.out_dir / "skin_modes", opt.format)};

  Table metrics;
  metrics.header = {"mode", "center_of_mass", "edge_weight_left", "edge_weight_right",
                    "participation_ratio"};
  for (std::size_t m = 0; m < rep.modes.size(); ++m)
    metrics.rows.push_back({format_number(static_cast<double>(m)),
                            format_number(rep.modes[m].center_of_mass),
                            format_number(rep.modes[m].edge_weight_left),
                            format_number(rep.modes[m].edge_weight_right),
                            format_number(rep.modes[m].participation_ratio)});
  files.push_back(write_table(metrics, opt.out_dir / "skin_metrics", opt.format));

  files.push_back(write_json_object(
      {{"left_localized_fraction", json_number(rep.left_localized_fraction)},
       {"mode_count", json_number(static_cast<double>(rep.modes.size()))}},
      opt.out_dir / "skin_summary.json"));
  return files;
}

FileList cmd_circuit(const RunConfig& cfg, const RunOptions& opt) {
  const CircuitParams p = cfg.circuit_params();
  ensure_directory(opt.out_dir);

  const double gmin = std::min(p.big_gamma1(), p.big_gamma2());
  const double t_end = cfg.get_double("t_end", 20.0 / gmin);
  const double dt = cfg.get_double("dt", 0.05 / std::max(p.omega1(), p.omega2()));

  const Eigen::MatrixXd system = build_circuit_system(p);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4 * p.n_cells);
  x0(0) = 1.0;  // unit voltage on site 1
  const TrajectoryData traj = integrate(system, x0, t_end, dt);

  Table t;
  t.header = {"t"};
  for (int n = 1; n <= p.n_cells; ++n) {
    t.header.push_back("V_" + std::to_string(n));
    t.header.push_back("Vb_" + std::to_string(n));
  }
  const Index stride = std::max<Index>(1, traj.times.size() / 5000);
  for (Index s = 0; s < traj.times.size(); s += stride) {
    std::vector<std::string> row{format_number(traj.times(s))};
    for (Index q = 0; q < traj.voltages.cols(); ++q)
      row.push_back(format_number(traj.voltages(s, q)));
    t.rows.push_back(std::move(row));
  }
  FileList files{write_table(t, opt.out_dir / "trajectory", opt.format)};

  // extracted poles vs envelope eigenvalues, matched in the rotating frame
  const std::vector<PoleEstimate> poles = spectral_extract(traj);
  const Eigen::VectorXcd menv =
      Eigen::ComplexEigenSolver<ComplexMatrix>(envelope_matrix(p), false).eigenvalues();
  Table cmp;
  cmp.header = {"pole_freq", "pole_decay", "env_freq", "env_decay", "rel_err"};
  for (const auto& pe : poles) {
    const Complex m_est = std::conj(Complex(-pe.decay_rate, pe.frequency - p.omega0()));
    Index best = 0;
    for (Index j = 1; j < menv.size(); ++j)
      if (std::abs(menv(j) - m_est) < std::abs(menv(best) - m_est)) best = j;
    const Complex m = menv(best);
    cmp.rows.push_back({format_number(pe.frequency), format_number(pe.decay_rate),
                        format_number(p.omega0() - m.imag()), format_number(-m.real()),
                        format_number(std::abs(m_est - m) / std::abs(m))});
  }
  files.push_back(write_table(cmp, opt.out_dir / "poles", opt.format));
  files.push_back(write_json_object(
      {{"weak_coupling", p.weak_coupling() ? "true" : "false"},
       {"t_end", json_number(t_end)},
       {"dt", json_number(dt)},
       {"params_hash", json_number(static_cast<double>(traj.params_hash % (1ull << 52)))}},
      opt.out_dir / "circuit_summary.json"));
  return files;
}

FileList cmd_eliminate(const RunConfig& cfg, const RunOptions& opt) {
  PhotonicParams p = cfg.photonic_params();
  if (p.boundary != Boundary::periodic)
    throw ConfigError("eliminate requires boundary = periodic");
  const int n_k = cfg.get_int("n_k", p.n_cells);
  const BlochErrorReport rep = effective_bloch_error(p, n_k);

  Table t;
  t.header = {"k", "entry", "numeric_re", "numeric_im", "analytic_re", "analytic_im", "abs_err"};
  for (const auto& r : rep.rows)
    t.rows.push_back({format_number(r.k), std::to_string(r.row) + std::to_string(r.col),
                      format_number(r.numeric.real()), format_number(r.numeric.imag()),
                      format_number(r.analytic.real()), format_number(r.analytic.imag()),
                      format_number(r.abs_err)});
  ensure_directory(opt.out_dir);
  FileList files{write_table(t, opt.out_dir / "eliminate", opt.format)};
  files.push_back(write_json_object(
      {{"max_abs_error", json_number(rep.max_abs_error)},
       {"max_rel_error", json_number(rep.max_rel_error)},
       {"gamma1_fit", json_number(rep.gamma1_fit)},
       {"gamma2_fit", json_number(rep.gamma2_fit)},
       {"gamma1_expected", json_number(p.gamma1_eff())},
       {"gamma2_expected", json_number(p.gamma2_eff())},
       {"weak_coupling", p.weak_coupling() ? "true" : "false"}},
      opt.out_dir / "eliminate_summary.json"));
  return files;
}

}  // namespace dssh
