#pragma once

#include "ltmor/types.hpp"
#include "ltmor/wavelet.hpp"

#include <cstdint>
#include <vector>

namespace ltmor {

/// Sinc sampling of the vertical line Re s = mu:
///   theta = (pi alpha^2 eta / M^2)^{1/3},  s_k = mu + i k theta,  w_k = theta,
/// for k = -M..M. Entry j of `points`/`weights` corresponds to k = j - M.
struct SamplingPlan {
  double mu = 0.0;
  double eta = 0.0;
  int M = 0;
  double theta = 0.0;
  std::vector<Complex> points;
  std::vector<double> weights;

  Index size() const { return static_cast<Index>(points.size()); }
  Complex point(int k) const { return points[static_cast<std::size_t>(k + M)]; }
};

/// Throws std::invalid_argument unless 0 < eta < mu and M >= 0 (M = 0 is the
/// degenerate single-point plan {mu} with weight 1).
SamplingPlan make_sampling_plan(double alpha, double mu, double eta, int M);

/// mu = alpha for alpha = pi and alpha/8 otherwise.
double default_mu(double alpha);
/// eta = mu/2.
inline double default_eta(double mu) { return 0.5 * mu; }

/// Solves (s^2 M + K) U = B{q''}(s) b for the second-derivative target U.
/// Fails with NumericalError if the relative residual exceeds 1e-10.
VectorXc solve_snapshot(const SparseSymMatrix& K, const SparseSymMatrix& M,
                        const Eigen::Ref<const VectorXd>& load, const RickerParams& params,
                        Complex s);

/// Same system with an explicit complex right-hand-side amplitude.
VectorXc solve_shifted(const SparseSymMatrix& K, const SparseSymMatrix& M,
                       const Eigen::Ref<const VectorXd>& load, Complex amplitude, Complex s);

struct SnapshotSet {
  SamplingPlan plan;
  /// Complex solutions for k = 0..M (column k), or k = -M..M (column k + M)
  /// when computed without the conjugate-symmetry economy.
  MatrixXc solutions;
  bool symmetric_economy = true;
  /// Real parts for k = -M..M, column j <-> k = j - M.
  MatrixXd snapshot_matrix;

  VectorXd weights() const;
  /// Complex solution at k in [-M, M], mirrored through conjugation if needed.
  VectorXc solution(int k) const;
};

struct SnapshotOptions {
  int workers = 1;
  bool exploit_symmetry = true;
};

/// Solves only k = 0..M (or all 2M+1 points if exploit_symmetry is false) and
/// mirrors real parts into the full 2M+1 column snapshot matrix. Solves for
/// distinct k run concurrently across `workers` threads.
SnapshotSet compute_snapshot_set(const SparseSymMatrix& K, const SparseSymMatrix& M,
                                 const Eigen::Ref<const VectorXd>& load,
                                 const RickerParams& params, const SamplingPlan& plan,
                                 const SnapshotOptions& options = {});

/// Discrete check of the a priori bound
///   ||U(s)||_V <= |B{q''}(s)| ||p||_H / (Re s min{1, c_A})
/// with c_A estimated as the smallest Rayleigh quotient x^T K x / x^T B x over
/// `probes` random vectors (an estimate from above, so the check is conservative).
struct StabilityCheck {
  double coercivity_estimate = 0.0;
  double max_ratio = 0.0;  // max_k ||U(s_k)||_V / bound_k, <= 1 when the bound holds
};

StabilityCheck check_stability_bound(const SnapshotSet& set, const SparseSymMatrix& K,
                                     const SparseSymMatrix& B,
                                     const Eigen::Ref<const VectorXd>& nodal_source,
                                     const Eigen::Ref<const VectorXd>& load,
                                     const RickerParams& params, std::uint64_t seed,
                                     int probes = 20);

/// ||v||_B for complex v: sqrt(Re^T B Re + Im^T B Im).
double complex_energy_norm(const Eigen::Ref<const VectorXc>& v, const SparseSymMatrix& B);

}  // namespace ltmor
