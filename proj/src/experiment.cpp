#include "ltmor/experiment.hpp"

#include "ltmor/fem.hpp"
#include "ltmor/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ltmor {

namespace fs = std::filesystem;

FemProblem assemble_problem(const ExperimentConfig& cfg) {
  FemProblem p;
  p.mesh = build_unit_square_mesh(cfg.mesh_n);
  p.K = assemble_stiffness(p.mesh, cfg.coefficient());
  p.M = assemble_mass(p.mesh);
  p.B = assemble_gram_V(p.K, p.M, cfg.gram);
  p.nodal_source = interpolate_source(p.mesh, cfg.source);
  p.load = p.M.data * p.nodal_source;
  return p;
}

NewmarkConfig newmark_config(const ExperimentConfig& cfg) {
  NewmarkConfig nm;
  nm.beta = cfg.beta;
  nm.gamma = cfg.gamma;
  nm.T = cfg.T;
  nm.steps = cfg.steps;
  nm.stride = cfg.stride;
  return nm;
}

TimeFunction ricker_forcing(const RickerParams& params) {
  return [params](double t) { return ricker_eval(params, t); };
}

OfflineResult run_offline(const ExperimentConfig& cfg, const FemProblem& problem, int M,
                          TimingReport& timings) {
  OfflineResult out;
  const SamplingPlan plan =
      make_sampling_plan(cfg.wavelet.alpha, cfg.resolved_mu(), cfg.resolved_eta(), M);
  {
    ScopedTimer timer(timings.laplace_hf_solves);
    SnapshotOptions opts;
    opts.workers = cfg.workers;
    out.snapshots = compute_snapshot_set(problem.K, problem.M, problem.load, cfg.wavelet, plan, opts);
  }
  {
    ScopedTimer timer(timings.build_rb);
    PodOptions pod;
    pod.method = cfg.svd;
    pod.gram_tag = to_string(cfg.gram);
    out.basis = build_reduced_basis(out.snapshots.snapshot_matrix, out.snapshots.weights(),
                                    problem.B, cfg.max_R(), pod);
  }
  out.stability = check_stability_bound(out.snapshots, problem.K, problem.B, problem.nodal_source,
                                        problem.load, cfg.wavelet, cfg.seed);
  return out;
}

OnlineResult run_online(const ExperimentConfig& cfg, const FemProblem& problem,
                        const ReducedBasis& basis, TimingReport& timings) {
  OnlineResult out;
  const NewmarkConfig nm = newmark_config(cfg);
  const TimeFunction q = ricker_forcing(cfg.wavelet);
  ScopedTimer timer(timings.solve_td_rb);
  for (int R : cfg.R_values) {
    const Index r = std::min<Index>(R, basis.dimension());
    const auto Phi = basis.Phi.leftCols(r);
    const ReducedOperators ops = reduced_operators(Phi, problem.M.data, problem.K.data, problem.load);
    out.reduced.emplace(R, newmark_solve(ops.M, ops.K, ops.load, q, nm));
  }
  return out;
}

Trajectory run_reference(const ExperimentConfig& cfg, const FemProblem& problem,
                         TimingReport& timings) {
  double stepping = 0.0;
  Trajectory traj;
  {
    ScopedTimer timer(stepping);
    traj = newmark_solve(problem.M.data, problem.K.data, problem.load, ricker_forcing(cfg.wavelet),
                         newmark_config(cfg));
  }
  timings.hf_total = timings.assemble_fem + stepping;
  return traj;
}

std::vector<ErrorRow> evaluate_errors(const FemProblem& problem, const Trajectory& reference,
                                      const ReducedBasis& basis, const OnlineResult& online, int M,
                                      TimingReport& timings) {
  std::vector<ErrorRow> rows;
  for (const auto& [R, reduced] : online.reduced) {
    Trajectory lifted;
    {
      ScopedTimer timer(timings.reconstruct_hf);
      lifted = reconstruct(basis.Phi.leftCols(reduced.dimension()), reduced);
    }
    ErrorRow row;
    row.R = R;
    row.M = M;
    row.rel_error_L2 = relative_error(reference, lifted, problem.M);
    row.rel_error_H1 = relative_error(reference, lifted, problem.K);
    rows.push_back(row);
  }
  return rows;
}

ExperimentRunner::ExperimentRunner(ExperimentConfig cfg, std::ostream& log)
    : cfg_(std::move(cfg)), log_(log) {
  cfg_.validate();
  fs::create_directories(cfg_.out_dir);
}

const FemProblem& ExperimentRunner::problem() {
  if (!problem_) {
    ScopedTimer timer(timings_.assemble_fem);
    problem_ = assemble_problem(cfg_);
    log_ << "assembled n=" << cfg_.mesh_n << " interior DOFs=" << problem_->mesh.num_interior() << '\n';
  }
  return *problem_;
}

io::MatrixFormat ExperimentRunner::matrix_format() const {
  return io::matrix_format_from_string(cfg_.matrix_format);
}

void ExperimentRunner::write_metadata(const std::string& command, const std::string& extra) const {
  std::ofstream out(cfg_.out_dir / files::metadata);
  out << "command=" << command << '\n' << describe(cfg_) << extra;
}

void ExperimentRunner::write_fields(const std::string& tag, const Trajectory& traj) const {
  if (!problem_ || traj.num_samples() == 0) return;
  for (double t : cfg_.field_times) {
    Index best = 0;
    for (Index j = 1; j < traj.num_samples(); ++j) {
      if (std::abs(traj.times[static_cast<std::size_t>(j)] - t) <
          std::abs(traj.times[static_cast<std::size_t>(best)] - t)) {
        best = j;
      }
    }
    const double ts = traj.times[static_cast<std::size_t>(best)];
    io::write_field(cfg_.out_dir / "fields" / (tag + "_t" + io::format_double(ts) + ".txt"),
                    problem_->mesh, problem_->mesh.extend_to_vertices(traj.u.col(best)), ts);
  }
}

void ExperimentRunner::offline() {
  const FemProblem& p = problem();
  const OfflineResult res = run_offline(cfg_, p, cfg_.M, timings_);
  log_ << "offline: " << res.snapshots.plan.M + 1 << " snapshot solves, theta="
       << res.snapshots.plan.theta << ", rank=" << res.basis.rank
       << ", basis dimension=" << res.basis.dimension() << '\n';
  if (res.basis.truncated) {
    log_ << "warning: requested R exceeds numerical rank " << res.basis.rank << "; basis truncated\n";
  }
  io::write_matrix(cfg_.out_dir / files::basis, res.basis.Phi, matrix_format());
  io::write_matrix(cfg_.out_dir / files::snapshots, res.snapshots.snapshot_matrix, matrix_format());
  io::write_singular_values(cfg_.out_dir / files::singular_values, res.basis.singular_values);
  io::write_timings(cfg_.out_dir / files::timings, timings_);
  std::ostringstream extra;
  extra << "stability.coercivity_estimate=" << io::format_double(res.stability.coercivity_estimate)
        << "\nstability.max_ratio=" << io::format_double(res.stability.max_ratio) << '\n';
  write_metadata("offline", extra.str());
}

void ExperimentRunner::online(const fs::path& basis_file) {
  const FemProblem& p = problem();
  ReducedBasis basis;
  basis.Phi = io::read_matrix(basis_file);
  if (basis.Phi.rows() != p.mesh.num_interior()) {
    throw NumericalError("basis file '" + basis_file.string() + "' has " +
                         std::to_string(basis.Phi.rows()) + " rows, expected " +
                         std::to_string(p.mesh.num_interior()));
  }
  const OnlineResult res = run_online(cfg_, p, basis, timings_);
  for (const auto& [R, traj] : res.reduced) {
    io::write_matrix(cfg_.out_dir / ("reduced_R" + std::to_string(R) + ".bin"), traj.u, matrix_format());
  }
  if (!res.reduced.empty()) {
    const auto& [R, traj] = *res.reduced.rbegin();
    Trajectory lifted;
    {
      ScopedTimer timer(timings_.reconstruct_hf);
      lifted = reconstruct(basis.Phi.leftCols(traj.dimension()), traj);
    }
    write_fields("rom_R" + std::to_string(R), lifted);
  }
  io::write_timings(cfg_.out_dir / files::timings, timings_);
  write_metadata("online");
  log_ << "online: " << res.reduced.size() << " reduced runs\n";
}

void ExperimentRunner::reference() {
  const FemProblem& p = problem();
  const Trajectory ref = run_reference(cfg_, p, timings_);
  write_fields("reference", ref);
  io::write_timings(cfg_.out_dir / files::timings, timings_);
  write_metadata("reference");
  log_ << "reference: " << ref.num_samples() << " samples, hf_total=" << timings_.hf_total << " s\n";
}

void ExperimentRunner::run(RunMode mode, const fs::path& basis_file) {
  if (mode == RunMode::offline_only) {
    offline();
    return;
  }
  const FemProblem& p = problem();
  ReducedBasis basis;
  std::string extra;
  if (mode == RunMode::online_only) {
    basis.Phi = io::read_matrix(basis_file);
    if (basis.Phi.rows() != p.mesh.num_interior()) {
      throw NumericalError("basis file '" + basis_file.string() + "' does not match the mesh");
    }
  } else {
    OfflineResult off = run_offline(cfg_, p, cfg_.M, timings_);
    io::write_matrix(cfg_.out_dir / files::basis, off.basis.Phi, matrix_format());
    io::write_singular_values(cfg_.out_dir / files::singular_values, off.basis.singular_values);
    basis = std::move(off.basis);
    log_ << "offline: rank=" << basis.rank << ", basis dimension=" << basis.dimension() << '\n';
    extra = "stability.max_ratio=" + io::format_double(off.stability.max_ratio) + '\n';
  }
  const OnlineResult online_res = run_online(cfg_, p, basis, timings_);
  const Trajectory ref = run_reference(cfg_, p, timings_);

  ErrorReport report;
  report.rows = evaluate_errors(p, ref, basis, online_res, cfg_.M, timings_);
  report.consistency_floor = consistency_floor(cfg_.wavelet, cfg_.resolved_mu()).relative();
  io::write_rel_error(cfg_.out_dir / files::rel_error, report);
  io::write_timings(cfg_.out_dir / files::timings, timings_);

  write_fields("reference", ref);
  if (!online_res.reduced.empty()) {
    const auto& [R, traj] = *online_res.reduced.rbegin();
    write_fields("rom_R" + std::to_string(R), reconstruct(basis.Phi.leftCols(traj.dimension()), traj));
  }
  extra += "consistency_floor.relative=" + io::format_double(report.consistency_floor) + '\n';
  write_metadata(mode == RunMode::online_only ? "run --online-only" : "run", extra);
  for (const auto& row : report.rows) {
    log_ << "R=" << row.R << " M=" << row.M << " L2=" << row.rel_error_L2 << " H1=" << row.rel_error_H1
         << '\n';
  }
  log_ << "speed-up " << timings_.speed_up() << " (hf " << timings_.hf_total << " s, rb "
       << timings_.rb_total() << " s)\n";
}

void ExperimentRunner::study() {
  const FemProblem& p = problem();
  const Trajectory ref = run_reference(cfg_, p, timings_);
  ErrorReport report;
  report.consistency_floor = consistency_floor(cfg_.wavelet, cfg_.resolved_mu()).relative();
  for (int M : cfg_.study_M) {
    TimingReport t;
    t.assemble_fem = timings_.assemble_fem;
    t.hf_total = timings_.hf_total;
    const OfflineResult off = run_offline(cfg_, p, M, t);
    const OnlineResult online_res = run_online(cfg_, p, off.basis, t);
    auto rows = evaluate_errors(p, ref, off.basis, online_res, M, t);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    io::write_singular_values(cfg_.out_dir / ("singular_values_M" + std::to_string(M) + ".csv"),
                              off.basis.singular_values);
    if (M == cfg_.M) {
      io::write_singular_values(cfg_.out_dir / files::singular_values, off.basis.singular_values);
    }
    io::write_timings(cfg_.out_dir / ("timings_M" + std::to_string(M) + ".csv"), t);
    timings_ = t;
    log_ << "study: M=" << M << " done (speed-up " << t.speed_up() << ")\n";
  }
  io::write_rel_error(cfg_.out_dir / files::rel_error, report);
  io::write_timings(cfg_.out_dir / files::timings, timings_);
  write_fields("reference", ref);
  write_metadata("study", "consistency_floor.relative=" + io::format_double(report.consistency_floor) + '\n');
}

}  // namespace ltmor
