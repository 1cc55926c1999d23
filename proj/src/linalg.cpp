#include "ltmor/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace ltmor {

CholeskyFactorization::CholeskyFactorization(const SparseSymMatrix& A) : n_(A.rows()) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("cholesky: matrix must be square");
  }
  llt_.compute(A.data);
  if (llt_.info() != Eigen::Success) {
    throw NumericalError("cholesky: matrix is not positive definite");
  }
}

MatrixXd CholeskyFactorization::solve(const Eigen::Ref<const MatrixXd>& B) const {
  return llt_.solve(MatrixXd(B));
}

MatrixXd CholeskyFactorization::apply_factor(const Eigen::Ref<const MatrixXd>& X) const {
  // R X = L^T (P X)
  const MatrixXd PX = llt_.permutationP() * X;
  return llt_.matrixU() * PX;
}

MatrixXd CholeskyFactorization::solve_factor(const Eigen::Ref<const MatrixXd>& Y) const {
  // R^{-1} Y = P^T L^{-T} Y
  const MatrixXd Z = llt_.matrixU().solve(MatrixXd(Y));
  return llt_.permutationPinv() * Z;
}

SparseMatrix<double> CholeskyFactorization::lower_factor() const {
  return SparseMatrix<double>(llt_.matrixL());
}

ComplexShiftedLU::ComplexShiftedLU(const SparseSymMatrix& A, Complex shift,
                                   const SparseSymMatrix& M)
    : n_(A.rows()), shift_(shift) {
  if (A.rows() != M.rows() || A.cols() != M.cols() || A.rows() != A.cols()) {
    throw std::invalid_argument("complex_lu: dimension mismatch");
  }
  shifted_ = A.data.cast<Complex>() + (shift * shift) * M.data.cast<Complex>();
  shifted_.makeCompressed();
  lu_.analyzePattern(shifted_);
  lu_.factorize(shifted_);
  if (lu_.info() != Eigen::Success) {
    throw NumericalError("complex_lu: factorization failed: " + lu_.lastErrorMessage());
  }
}

VectorXc ComplexShiftedLU::solve(const Eigen::Ref<const VectorXc>& b) const {
  VectorXc x = lu_.solve(VectorXc(b));
  if (lu_.info() != Eigen::Success) {
    throw NumericalError("complex_lu: solve failed");
  }
  return x;
}

CholeskyFactorization cholesky(const SparseSymMatrix& A) { return CholeskyFactorization(A); }

ComplexShiftedLU complex_lu(const SparseSymMatrix& A, Complex shift, const SparseSymMatrix& M) {
  return ComplexShiftedLU(A, shift, M);
}

SvdResult dense_svd(const Eigen::Ref<const MatrixXd>& A) {
  Eigen::BDCSVD<MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

SymmetricEigen symmetric_eigen(const Eigen::Ref<const MatrixXd>& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(A);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigen: did not converge");
  }
  // Eigen returns ascending order.
  return {eig.eigenvalues().reverse(), eig.eigenvectors().rowwise().reverse()};
}

double relative_asymmetry(const SparseMatrix<double>& A) {
  const SparseMatrix<double> At = A.transpose();
  const SparseMatrix<double> diff = A - At;
  double num = 0.0;
  double den = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix<double>::InnerIterator it(diff, k); it; ++it) {
      num = std::max(num, std::abs(it.value()));
    }
  }
  for (Index k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      den = std::max(den, std::abs(it.value()));
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace ltmor
