#pragma once

#include "ltmor/fem.hpp"
#include "ltmor/types.hpp"

#include <string>

namespace ltmor {

/// How the SVD of the whitened snapshot matrix is obtained.
enum class SvdMethod {
  direct,  // thin bidiagonal SVD of the N x m matrix
  gram,    // eigendecomposition of the m x m Gram matrix (squares the condition number)
};

/// B_h-orthonormal POD basis: Phi^T B_h Phi = I.
struct ReducedBasis {
  MatrixXd Phi;             // N x R
  VectorXd singular_values;  // full spectrum of the whitened snapshot matrix, nonincreasing
  Index rank = 0;           // numerical rank (sigma_j > 1e-13 sigma_1)
  std::string gram_tag = "K";
  bool truncated = false;   // requested R exceeded the numerical rank

  Index dimension() const { return Phi.cols(); }
  /// Leading R columns (R <= dimension()).
  ReducedBasis leading(Index R) const;
};

struct PodOptions {
  SvdMethod method = SvdMethod::direct;
  std::string gram_tag = "K";
};

/// Whiten S with the Cholesky factor of B_h and the weights, take the SVD and
/// map the leading R left singular vectors back with R_h^{-1}. R larger than
/// the numerical rank is truncated to the rank and flagged.
ReducedBasis build_reduced_basis(const Eigen::Ref<const MatrixXd>& S,
                                 const Eigen::Ref<const VectorXd>& weights,
                                 const SparseSymMatrix& B, Index R, const PodOptions& options = {});

/// sum_j w_j || S_j - Phi Phi^T B S_j ||_B^2, computed directly.
double pod_residual(const Eigen::Ref<const MatrixXd>& S, const Eigen::Ref<const VectorXd>& weights,
                    const SparseSymMatrix& B, const Eigen::Ref<const MatrixXd>& Phi);

/// sum_{j > R} sigma_j^2.
double discarded_energy(const ReducedBasis& basis, Index R);

}  // namespace ltmor
