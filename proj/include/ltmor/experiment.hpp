#pragma once

#include "ltmor/config.hpp"
#include "ltmor/io.hpp"
#include "ltmor/mesh.hpp"
#include "ltmor/metrics.hpp"
#include "ltmor/pod.hpp"
#include "ltmor/snapshots.hpp"
#include "ltmor/time_integrator.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

namespace ltmor {

/// Assembled high-fidelity problem on interior DOFs.
struct FemProblem {
  Mesh mesh;
  SparseSymMatrix K;
  SparseSymMatrix M;
  SparseSymMatrix B;  // V-inner-product Gram
  VectorXd nodal_source;
  VectorXd load;      // M p_h
};

FemProblem assemble_problem(const ExperimentConfig& cfg);

NewmarkConfig newmark_config(const ExperimentConfig& cfg);
TimeFunction ricker_forcing(const RickerParams& params);

struct OfflineResult {
  SnapshotSet snapshots;
  ReducedBasis basis;  // max(rom.R) columns
  StabilityCheck stability;
};

/// Snapshot solves at the sinc points for `M` and POD of the real parts.
OfflineResult run_offline(const ExperimentConfig& cfg, const FemProblem& problem, int M,
                          TimingReport& timings);

struct OnlineResult {
  std::map<int, Trajectory> reduced;  // keyed by R
};

/// Galerkin projection and reduced Newmark stepping for each R in rom.R. No
/// solve larger than R happens here.
OnlineResult run_online(const ExperimentConfig& cfg, const FemProblem& problem,
                        const ReducedBasis& basis, TimingReport& timings);

Trajectory run_reference(const ExperimentConfig& cfg, const FemProblem& problem,
                         TimingReport& timings);

/// Relative L2/H1 errors for each reduced trajectory; reconstruction time is
/// charged to timings.reconstruct_hf.
std::vector<ErrorRow> evaluate_errors(const FemProblem& problem, const Trajectory& reference,
                                      const ReducedBasis& basis, const OnlineResult& online, int M,
                                      TimingReport& timings);

/// File names written into the output directory.
namespace files {
inline constexpr const char* basis = "basis.bin";
inline constexpr const char* snapshots = "snapshots.bin";
inline constexpr const char* singular_values = "singular_values.csv";
inline constexpr const char* rel_error = "rel_error.csv";
inline constexpr const char* timings = "timings.csv";
inline constexpr const char* metadata = "metadata.txt";
}  // namespace files

enum class RunMode { full, offline_only, online_only };

/// Driver used by the CLI subcommands. `log` receives progress lines.
class ExperimentRunner {
 public:
  ExperimentRunner(ExperimentConfig cfg, std::ostream& log);

  void offline();
  void online(const std::filesystem::path& basis_file);
  void reference();
  void run(RunMode mode, const std::filesystem::path& basis_file = {});
  void study();

  const ExperimentConfig& config() const { return cfg_; }

 private:
  const FemProblem& problem();
  void write_metadata(const std::string& command, const std::string& extra = {}) const;
  void write_fields(const std::string& tag, const Trajectory& traj) const;
  io::MatrixFormat matrix_format() const;

  ExperimentConfig cfg_;
  std::ostream& log_;
  TimingReport timings_;
  std::optional<FemProblem> problem_;
};

}  // namespace ltmor
