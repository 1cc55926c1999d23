#include "ltmor/snapshots.hpp"

#include "ltmor/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <mutex>
#include <numbers>
#include <thread>

namespace ltmor {

SamplingPlan make_sampling_plan(double alpha, double mu, double eta, int M) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("make_sampling_plan: alpha must be positive");
  }
  if (!(eta > 0.0) || !(eta < mu)) {
    throw std::invalid_argument("make_sampling_plan: require 0 < eta < mu");
  }
  if (M < 0) {
    throw std::invalid_argument("make_sampling_plan: M must be nonnegative");
  }
  SamplingPlan plan;
  plan.mu = mu;
  plan.eta = eta;
  plan.M = M;
  plan.theta = M == 0 ? 1.0
                      : std::cbrt(std::numbers::pi * alpha * alpha * eta /
                                  (static_cast<double>(M) * static_cast<double>(M)));
  plan.points.reserve(static_cast<std::size_t>(2 * M + 1));
  for (int k = -M; k <= M; ++k) {
    plan.points.emplace_back(mu, k * plan.theta);
  }
  plan.weights.assign(plan.points.size(), plan.theta);
  return plan;
}

double default_mu(double alpha) {
  return std::abs(alpha - std::numbers::pi) < 1e-12 ? alpha : alpha / 8.0;
}

VectorXc solve_shifted(const SparseSymMatrix& K, const SparseSymMatrix& M,
                       const Eigen::Ref<const VectorXd>& load, Complex amplitude, Complex s) {
  if (!(s.real() > 0.0)) {
    throw std::invalid_argument("solve_shifted: Re s must be positive");
  }
  const ComplexShiftedLU lu(K, s, M);
  const VectorXc rhs = amplitude * load.cast<Complex>();
  VectorXc x = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double res = (lu.matrix() * x - rhs).norm();
  if (!(res <= 1e-10 * rhs_norm) && rhs_norm > 0.0) {
    throw NumericalError("snapshot solve residual " + std::to_string(res / rhs_norm) +
                         " exceeds 1e-10");
  }
  return x;
}

VectorXc solve_snapshot(const SparseSymMatrix& K, const SparseSymMatrix& M,
                        const Eigen::Ref<const VectorXd>& load, const RickerParams& params,
                        Complex s) {
  return solve_shifted(K, M, load, bilateral_laplace_d2q(params, s), s);
}

VectorXd SnapshotSet::weights() const {
  return Eigen::Map<const VectorXd>(plan.weights.data(), static_cast<Index>(plan.weights.size()));
}

VectorXc SnapshotSet::solution(int k) const {
  if (std::abs(k) > plan.M) {
    throw std::out_of_range("SnapshotSet::solution: index outside [-M, M]");
  }
  if (!symmetric_economy) return solutions.col(k + plan.M);
  return k >= 0 ? VectorXc(solutions.col(k)) : VectorXc(solutions.col(-k).conjugate());
}

SnapshotSet compute_snapshot_set(const SparseSymMatrix& K, const SparseSymMatrix& M,
                                 const Eigen::Ref<const VectorXd>& load,
                                 const RickerParams& params, const SamplingPlan& plan,
                                 const SnapshotOptions& options) {
  params.validate();
  const Index n = K.rows();
  const int Mk = plan.M;
  SnapshotSet set;
  set.plan = plan;
  set.symmetric_economy = options.exploit_symmetry;

  // Column c of `solutions` holds k = first_k + c.
  const int first_k = options.exploit_symmetry ? 0 : -Mk;
  const int count = options.exploit_symmetry ? Mk + 1 : 2 * Mk + 1;
  set.solutions.resize(n, count);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int c = next.fetch_add(1); c < count; c = next.fetch_add(1)) {
      try {
        set.solutions.col(c) = solve_snapshot(K, M, load, params, plan.point(first_k + c));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(options.workers, 1, count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  set.snapshot_matrix.resize(n, 2 * Mk + 1);
  for (int k = -Mk; k <= Mk; ++k) {
    if (options.exploit_symmetry) {
      set.snapshot_matrix.col(k + Mk) = set.solutions.col(std::abs(k)).real();
    } else {
      set.snapshot_matrix.col(k + Mk) = set.solutions.col(k + Mk).real();
    }
  }
  return set;
}

double complex_energy_norm(const Eigen::Ref<const VectorXc>& v, const SparseSymMatrix& B) {
  const VectorXd re = v.real();
  const VectorXd im = v.imag();
  return std::sqrt(re.dot(B.data * re) + im.dot(B.data * im));
}

StabilityCheck check_stability_bound(const SnapshotSet& set, const SparseSymMatrix& K,
                                     const SparseSymMatrix& B,
                                     const Eigen::Ref<const VectorXd>& nodal_source,
                                     const Eigen::Ref<const VectorXd>& load,
                                     const RickerParams& params, std::uint64_t seed, int probes) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  StabilityCheck check;
  check.coercivity_estimate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < probes; ++i) {
    VectorXd x(K.rows());
    for (Index j = 0; j < x.size(); ++j) x(j) = normal(rng);
    check.coercivity_estimate =
        std::min(check.coercivity_estimate, x.dot(K.data * x) / x.dot(B.data * x));
  }
  const double p_norm = std::sqrt(nodal_source.dot(load));
  const double floor = std::min(1.0, check.coercivity_estimate);
  for (int k = -set.plan.M; k <= set.plan.M; ++k) {
    const Complex s = set.plan.point(k);
    const double bound = std::abs(bilateral_laplace_d2q(params, s)) * p_norm / (s.real() * floor);
    const double norm = complex_energy_norm(set.solution(k), B);
    if (bound > 0.0) check.max_ratio = std::max(check.max_ratio, norm / bound);
  }
  return check;
}

}  // namespace ltmor
