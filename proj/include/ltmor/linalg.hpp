#pragma once

#include "ltmor/types.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <memory>

namespace ltmor {

enum class FactorizationKind { real_cholesky, complex_lu };

/// Sparse Cholesky P A P^T = L L^T with an AMD fill-reducing ordering.
///
/// Writing R = L^T P gives A = R^T R, the upper-triangular whitening factor
/// used by the POD. `apply_factor` and `solve_factor` apply R and R^{-1}.
class CholeskyFactorization {
 public:
  explicit CholeskyFactorization(const SparseSymMatrix& A);

  FactorizationKind kind() const { return FactorizationKind::real_cholesky; }
  Index dimension() const { return n_; }

  /// X = A^{-1} B (B may be a single column).
  MatrixXd solve(const Eigen::Ref<const MatrixXd>& B) const;

  /// y = R x
  MatrixXd apply_factor(const Eigen::Ref<const MatrixXd>& X) const;
  /// x = R^{-1} y
  MatrixXd solve_factor(const Eigen::Ref<const MatrixXd>& Y) const;

  /// Lower-triangular L (in permuted ordering).
  SparseMatrix<double> lower_factor() const;

 private:
  Index n_;
  Eigen::SimplicialLLT<SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt_;
};

/// Sparse LU of the complex-shifted operator shift^2 M + A (COLAMD ordering).
class ComplexShiftedLU {
 public:
  ComplexShiftedLU(const SparseSymMatrix& A, Complex shift, const SparseSymMatrix& M);

  FactorizationKind kind() const { return FactorizationKind::complex_lu; }
  Index dimension() const { return n_; }
  Complex shift() const { return shift_; }

  VectorXc solve(const Eigen::Ref<const VectorXc>& b) const;
  /// The assembled shifted matrix (kept for residual checks).
  const SparseMatrix<Complex>& matrix() const { return shifted_; }

 private:
  Index n_;
  Complex shift_;
  SparseMatrix<Complex> shifted_;
  // SparseLU::solve is logically const but not declared so in older Eigen.
  mutable Eigen::SparseLU<SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu_;
};

CholeskyFactorization cholesky(const SparseSymMatrix& A);
ComplexShiftedLU complex_lu(const SparseSymMatrix& A, Complex shift, const SparseSymMatrix& M);

struct SvdResult {
  MatrixXd U;      // m x k
  VectorXd sigma;  // k, nonincreasing
  MatrixXd V;      // n x k
};

/// Thin SVD, A = U diag(sigma) V^T.
SvdResult dense_svd(const Eigen::Ref<const MatrixXd>& A);

struct SymmetricEigen {
  VectorXd values;   // nonincreasing
  MatrixXd vectors;  // columns match `values`
};

SymmetricEigen symmetric_eigen(const Eigen::Ref<const MatrixXd>& A);

/// Max-norm asymmetry ||A - A^T||_max / ||A||_max.
double relative_asymmetry(const SparseMatrix<double>& A);

}  // namespace ltmor
