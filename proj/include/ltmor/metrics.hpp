#pragma once

#include "ltmor/time_integrator.hpp"
#include "ltmor/types.hpp"
#include "ltmor/wavelet.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace ltmor {

/// Discrete relative error in L2(I; X),
///   ( sum_j ||u_h(t_j) - u_rb(t_j)||_X^2 )^{1/2} / ( sum_j ||u_h(t_j)||_X^2 )^{1/2},
/// with ||v||_X^2 = v^T X v. Throws NumericalError when the reference vanishes.
double relative_error(const Trajectory& full, const Trajectory& reduced, const SparseSymMatrix& X);

/// Same metric for a reduced trajectory given in coordinates of Phi; avoids
/// forming the reconstructed trajectory explicitly.
double relative_error(const Trajectory& full, const Eigen::Ref<const MatrixXd>& Phi,
                      const Trajectory& reduced, const SparseSymMatrix& X);

/// Size of the negative-time tail of q'' that the bilateral transform sees but
/// the causal time-domain problem does not.
struct ConsistencyFloor {
  double quadrature = 0.0;                 // int_{-inf}^0 |q''(t)| e^{-mu t} dt
  std::optional<double> analytic_bound;    // alpha e^{-(alpha t0/2 - 1)^2}; empty if t0 < 2(alpha+mu)/alpha^2
  double total_weighted_forcing = 0.0;     // int_R |q''(t)| e^{-mu t} dt
  bool bound_applicable() const { return analytic_bound.has_value(); }
  /// quadrature / total_weighted_forcing
  double relative() const { return quadrature / total_weighted_forcing; }
};

ConsistencyFloor consistency_floor(const RickerParams& params, double mu);

/// Composite Simpson rule with `intervals` (made even) subintervals.
template <typename Scalar, typename F>
Scalar simpson(F&& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  Scalar sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return sum * (h / 3.0);
}

/// Wall-clock seconds per pipeline phase.
struct TimingReport {
  double assemble_fem = 0.0;
  double laplace_hf_solves = 0.0;
  double build_rb = 0.0;
  double solve_td_rb = 0.0;
  double reconstruct_hf = 0.0;
  double hf_total = 0.0;  // assembly + full time stepping

  double rb_total() const {
    return assemble_fem + laplace_hf_solves + build_rb + solve_td_rb + reconstruct_hf;
  }
  double speed_up() const { return rb_total() > 0.0 ? hf_total / rb_total() : 0.0; }
};

/// Adds elapsed wall time to a slot on destruction.
class ScopedTimer {
 public:
  explicit ScopedTimer(double& slot) : slot_(slot), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    slot_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  double& slot_;
  std::chrono::steady_clock::time_point start_;
};

template <typename F>
double time_call(F&& f) {
  double t = 0.0;
  {
    ScopedTimer timer(t);
    f();
  }
  return t;
}

struct ErrorRow {
  Index R = 0;
  int M = 0;
  double rel_error_L2 = 0.0;
  double rel_error_H1 = 0.0;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  double consistency_floor = 0.0;  // relative floor of the wavelet tail
};

}  // namespace ltmor
