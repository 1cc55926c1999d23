#pragma once

#include "ltmor/types.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace ltmor {

/// Newmark parameters and the uniform time grid t_j = j T / N_t.
struct NewmarkConfig {
  double beta = 0.25;
  double gamma = 0.5;
  double T = 10.0;
  int steps = 2000;
  int stride = 1;  // keep every stride-th step (step 0 and the last step always kept)
  bool store_velocity = false;
  bool store_acceleration = false;

  double dt() const { return T / steps; }

  void validate() const {
    if (!(T > 0.0) || steps < 1) throw std::invalid_argument("NewmarkConfig: need T > 0, N_t >= 1");
    if (stride < 1) throw std::invalid_argument("NewmarkConfig: stride must be >= 1");
    if (!(beta > 0.0) || !(gamma > 0.0)) {
      throw std::invalid_argument("NewmarkConfig: beta and gamma must be positive");
    }
  }
};

/// Sampled solution history; column j of u (v, a) is the state at times[j].
struct Trajectory {
  std::vector<double> times;
  std::vector<int> steps;
  MatrixXd u;
  MatrixXd v;  // empty unless requested
  MatrixXd a;  // empty unless requested

  Index num_samples() const { return static_cast<Index>(times.size()); }
  Index dimension() const { return u.rows(); }
};

using TimeFunction = std::function<double(double)>;

namespace detail {

template <typename MatrixType>
struct SpdSolver;

template <>
struct SpdSolver<MatrixXd> {
  using type = Eigen::LLT<MatrixXd>;
};

template <>
struct SpdSolver<SparseMatrix<double>> {
  using type = Eigen::SimplicialLDLT<SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>>;
};

template <typename Solver, typename MatrixType>
void factorize(Solver& solver, const MatrixType& A, const char* what) {
  solver.compute(A);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(std::string("newmark: factorization of ") + what + " failed");
  }
}

inline std::vector<int> sample_steps(int steps, int stride) {
  std::vector<int> out;
  for (int j = 0; j <= steps; j += stride) out.push_back(j);
  if (out.back() != steps) out.push_back(steps);
  return out;
}

}  // namespace detail

/// Average-acceleration (or general beta/gamma) Newmark integration of
///   M a + K u = q(t) load,  u(0) = 0, v(0) = 0,
/// for dense (reduced) or sparse (full) operators. The effective matrix
/// M + beta dt^2 K is factorized once; a_0 comes from the t = 0 equilibrium
/// M a_0 = q(0) load.
template <typename MatrixType>
Trajectory newmark_solve(const MatrixType& M, const MatrixType& K,
                         const Eigen::Ref<const VectorXd>& load, const TimeFunction& q,
                         const NewmarkConfig& cfg) {
  cfg.validate();
  const Index n = M.rows();
  if (M.cols() != n || K.rows() != n || K.cols() != n || load.size() != n) {
    throw std::invalid_argument("newmark_solve: dimension mismatch");
  }
  const double dt = cfg.dt();
  const double bdt2 = cfg.beta * dt * dt;

  using Solver = typename detail::SpdSolver<MatrixType>::type;
  const MatrixType effective = M + bdt2 * K;
  Solver eff_solver;
  detail::factorize(eff_solver, effective, "effective matrix");

  VectorXd u = VectorXd::Zero(n);
  VectorXd v = VectorXd::Zero(n);
  VectorXd a(n);
  {
    Solver mass_solver;
    detail::factorize(mass_solver, M, "mass matrix");
    a = mass_solver.solve(VectorXd(q(0.0) * load));
  }

  Trajectory traj;
  traj.steps = detail::sample_steps(cfg.steps, cfg.stride);
  const auto ns = static_cast<Index>(traj.steps.size());
  traj.times.reserve(traj.steps.size());
  for (int j : traj.steps) traj.times.push_back(j * dt);
  traj.u.resize(n, ns);
  if (cfg.store_velocity) traj.v.resize(n, ns);
  if (cfg.store_acceleration) traj.a.resize(n, ns);

  Index next_sample = 0;
  auto record = [&](int step) {
    if (next_sample < ns && traj.steps[static_cast<std::size_t>(next_sample)] == step) {
      traj.u.col(next_sample) = u;
      if (cfg.store_velocity) traj.v.col(next_sample) = v;
      if (cfg.store_acceleration) traj.a.col(next_sample) = a;
      ++next_sample;
    }
  };
  record(0);

  VectorXd rhs(n);
  for (int step = 1; step <= cfg.steps; ++step) {
    const double t = step * dt;
    // Predictors.
    u += dt * v + (0.5 - cfg.beta) * dt * dt * a;
    v += (1.0 - cfg.gamma) * dt * a;
    rhs.noalias() = q(t) * load;
    rhs.noalias() -= K * u;
    a = eff_solver.solve(rhs);
    const double rhs_norm = rhs.norm();
    if (rhs_norm > 0.0) {
      const double res = (effective * a - rhs).norm();
      if (!(res <= 1e-10 * rhs_norm)) {
        throw NumericalError("newmark: effective solve residual " +
                             std::to_string(res / rhs_norm) + " at step " + std::to_string(step));
      }
    }
    u += bdt2 * a;
    v += cfg.gamma * dt * a;
    record(step);
  }
  return traj;
}

/// Galerkin-projected operators M_r = Phi^T M Phi, K_r = Phi^T K Phi, b_r = Phi^T b.
struct ReducedOperators {
  MatrixXd M;
  MatrixXd K;
  VectorXd load;
};

template <typename MatrixType>
ReducedOperators reduced_operators(const Eigen::Ref<const MatrixXd>& Phi, const MatrixType& M,
                                   const MatrixType& K, const Eigen::Ref<const VectorXd>& load) {
  if (Phi.rows() != M.rows() || Phi.rows() != K.rows() || Phi.rows() != load.size()) {
    throw std::invalid_argument("reduced_operators: dimension mismatch");
  }
  ReducedOperators ops;
  const MatrixXd MPhi = M * Phi;
  const MatrixXd KPhi = K * Phi;
  ops.M = Phi.transpose() * MPhi;
  ops.K = Phi.transpose() * KPhi;
  // Symmetrize away rounding from the two-sided product.
  ops.M = 0.5 * (ops.M + ops.M.transpose()).eval();
  ops.K = 0.5 * (ops.K + ops.K.transpose()).eval();
  ops.load = Phi.transpose() * load;
  return ops;
}

/// Lift reduced coordinates back to the full space: u_h(t_j) = Phi u_r(t_j).
inline Trajectory reconstruct(const Eigen::Ref<const MatrixXd>& Phi, const Trajectory& reduced) {
  if (Phi.cols() != reduced.dimension()) {
    throw std::invalid_argument("reconstruct: basis and trajectory dimensions differ");
  }
  Trajectory full;
  full.times = reduced.times;
  full.steps = reduced.steps;
  full.u.noalias() = Phi * reduced.u;
  if (reduced.v.size() > 0) full.v.noalias() = Phi * reduced.v;
  if (reduced.a.size() > 0) full.a.noalias() = Phi * reduced.a;
  return full;
}

}  // namespace ltmor
