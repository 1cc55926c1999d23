#include "ltmor/pod.hpp"

#include "ltmor/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ltmor {

namespace {

constexpr double kRankTol = 1e-13;

struct LeftSingular {
  MatrixXd U;
  VectorXd sigma;
};

LeftSingular whitened_svd(const MatrixXd& St, SvdMethod method) {
  if (method == SvdMethod::direct) {
    auto svd = dense_svd(St);
    return {std::move(svd.U), std::move(svd.sigma)};
  }
  // Gram route: S^T S = V diag(sigma^2) V^T, U = S V diag(1/sigma).
  const MatrixXd G = St.transpose() * St;
  const auto eig = symmetric_eigen(G);
  const Index m = G.rows();
  VectorXd sigma = eig.values.cwiseMax(0.0).cwiseSqrt();
  MatrixXd U = St * eig.vectors;
  for (Index j = 0; j < m; ++j) {
    if (sigma(j) > kRankTol * sigma(0)) U.col(j) /= sigma(j);
  }
  return {std::move(U), std::move(sigma)};
}

}  // namespace

ReducedBasis ReducedBasis::leading(Index R) const {
  if (R < 0 || R > dimension()) {
    throw std::invalid_argument("ReducedBasis::leading: R outside [0, dimension]");
  }
  ReducedBasis out = *this;
  out.Phi = Phi.leftCols(R);
  return out;
}

ReducedBasis build_reduced_basis(const Eigen::Ref<const MatrixXd>& S,
                                 const Eigen::Ref<const VectorXd>& weights,
                                 const SparseSymMatrix& B, Index R, const PodOptions& options) {
  if (S.cols() != weights.size()) {
    throw std::invalid_argument("build_reduced_basis: one weight per snapshot required");
  }
  if (S.rows() != B.rows()) {
    throw std::invalid_argument("build_reduced_basis: snapshot length does not match B_h");
  }
  if ((weights.array() <= 0.0).any()) {
    throw std::invalid_argument("build_reduced_basis: weights must be positive");
  }
  if (R < 0) {
    throw std::invalid_argument("build_reduced_basis: R must be nonnegative");
  }

  const CholeskyFactorization chol(B);
  const MatrixXd St = chol.apply_factor(S) * weights.cwiseSqrt().asDiagonal();
  const LeftSingular svd = whitened_svd(St, options.method);

  ReducedBasis basis;
  basis.gram_tag = options.gram_tag;
  basis.singular_values = svd.sigma;
  const double top = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
  basis.rank = top > 0.0 ? (svd.sigma.array() > kRankTol * top).count() : 0;
  Index keep = R;
  if (keep > basis.rank) {
    keep = basis.rank;
    basis.truncated = true;
  }
  basis.Phi = chol.solve_factor(svd.U.leftCols(keep));
  return basis;
}

double pod_residual(const Eigen::Ref<const MatrixXd>& S, const Eigen::Ref<const VectorXd>& weights,
                    const SparseSymMatrix& B, const Eigen::Ref<const MatrixXd>& Phi) {
  if (S.cols() != weights.size() || S.rows() != B.rows() || Phi.rows() != B.rows()) {
    throw std::invalid_argument("pod_residual: dimension mismatch");
  }
  const MatrixXd BS = B.data * S;
  const MatrixXd E = S - Phi * (Phi.transpose() * BS);
  const MatrixXd BE = B.data * E;
  double total = 0.0;
  for (Index j = 0; j < S.cols(); ++j) {
    total += weights(j) * E.col(j).dot(BE.col(j));
  }
  return total;
}

double discarded_energy(const ReducedBasis& basis, Index R) {
  const Index r = basis.singular_values.size();
  if (R >= r) return 0.0;
  return basis.singular_values.tail(r - R).squaredNorm();
}

}  // namespace ltmor
