#include "ltmor/metrics.hpp"

#include <cmath>

namespace ltmor {

namespace {

void check_compatible(const Trajectory& full, const Trajectory& reduced) {
  if (full.times != reduced.times) {
    throw std::invalid_argument("relative_error: trajectories must share sample times");
  }
}

double finish(double num, double den) {
  if (!(den > 1e-300)) {
    throw NumericalError("relative_error: reference trajectory has zero norm");
  }
  return std::sqrt(num / den);
}

}  // namespace

double relative_error(const Trajectory& full, const Trajectory& reduced, const SparseSymMatrix& X) {
  check_compatible(full, reduced);
  if (full.u.rows() != reduced.u.rows() || full.u.rows() != X.rows()) {
    throw std::invalid_argument("relative_error: dimension mismatch");
  }
  const MatrixXd diff = full.u - reduced.u;
  const MatrixXd Xdiff = X.data * diff;
  const MatrixXd Xfull = X.data * full.u;
  double num = 0.0;
  double den = 0.0;
  for (Index j = 0; j < full.u.cols(); ++j) {
    num += diff.col(j).dot(Xdiff.col(j));
    den += full.u.col(j).dot(Xfull.col(j));
  }
  return finish(num, den);
}

double relative_error(const Trajectory& full, const Eigen::Ref<const MatrixXd>& Phi,
                      const Trajectory& reduced, const SparseSymMatrix& X) {
  check_compatible(full, reduced);
  if (Phi.rows() != full.u.rows() || Phi.cols() != reduced.u.rows()) {
    throw std::invalid_argument("relative_error: dimension mismatch");
  }
  Trajectory lifted;
  lifted.times = reduced.times;
  lifted.u.noalias() = Phi * reduced.u;
  return relative_error(full, lifted, X);
}

ConsistencyFloor consistency_floor(const RickerParams& params, double mu) {
  params.validate();
  if (!(mu > 0.0)) throw std::invalid_argument("consistency_floor: mu must be positive");
  const double a = params.alpha;
  const double t0 = params.t0;

  ConsistencyFloor out;
  if (t0 >= 2.0 * (a + mu) / (a * a)) {
    const double e = 0.5 * a * t0 - 1.0;
    out.analytic_bound = a * std::exp(-e * e);
  }

  // |q''(t)| e^{-mu t} is a Hermite polynomial times exp(-a^2 (t - t0)^2/4 - mu t),
  // whose Gaussian factor peaks at t* = t0 - 2 mu / a^2 with width 2/a.
  auto integrand = [&](double t) { return std::abs(ricker_dt2_eval(params, t)) * std::exp(-mu * t); };
  const double center = t0 - 2.0 * mu / (a * a);
  const double lo = center - 40.0 / a;
  const double hi = center + 40.0 / a;
  const int per_unit = 4000;
  if (lo < 0.0) {
    const double upper = std::min(0.0, hi);
    const int n = std::max(2000, static_cast<int>(per_unit * a * (upper - lo)));
    out.quadrature = simpson<double>(integrand, lo, upper, n);
  }
  const int n_total = std::max(2000, static_cast<int>(per_unit * a * (hi - lo)));
  out.total_weighted_forcing = simpson<double>(integrand, lo, hi, n_total);
  return out;
}

}  // namespace ltmor
