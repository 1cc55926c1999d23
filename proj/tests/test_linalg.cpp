#include "ltmor/fem.hpp"
#include "ltmor/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ltmor;

namespace {

SparseSymMatrix from_dense(const MatrixXd& A) {
  return SparseSymMatrix{A.sparseView(), true};
}

MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  MatrixXd A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = dist(rng);
  return A;
}

}  // namespace

TEST(Linalg, DiagonalCholeskySolve) {
  MatrixXd A = MatrixXd::Zero(2, 2);
  A.diagonal() << 4.0, 9.0;
  const auto chol = cholesky(from_dense(A));
  EXPECT_EQ(chol.kind(), FactorizationKind::real_cholesky);
  const VectorXd x = chol.solve(Eigen::Vector2d(8.0, 27.0));
  EXPECT_NEAR(x(0), 2.0, 1e-15);
  EXPECT_NEAR(x(1), 3.0, 1e-15);
}

TEST(Linalg, CholeskyRejectsIndefinite) {
  MatrixXd A(2, 2);
  A << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(cholesky(from_dense(A)), NumericalError);
}

TEST(Linalg, WhiteningFactorRoundTrip) {
  const Mesh mesh = build_unit_square_mesh(9);
  const auto K = assemble_stiffness(mesh);
  const auto chol = cholesky(K);
  const MatrixXd X = random_matrix(K.rows(), 4, 3);
  const MatrixXd RX = chol.apply_factor(X);
  // R^T R = K  <=>  ||R x||^2 = x^T K x
  const MatrixXd gram = RX.transpose() * RX;
  const MatrixXd expected = X.transpose() * (K.data * X);
  EXPECT_LT((gram - expected).norm(), 1e-12 * expected.norm());
  EXPECT_LT((chol.solve_factor(RX) - X).norm(), 1e-12 * X.norm());
  const VectorXd b = VectorXd::Ones(K.rows());
  EXPECT_LT((K.data * chol.solve(b) - b).norm(), 1e-12 * b.norm());
}

TEST(Linalg, IdentitySvd) {
  const auto svd = dense_svd(MatrixXd::Identity(3, 3));
  EXPECT_LT((svd.sigma - VectorXd::Ones(3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Linalg, RandomSvdReconstructsAndIsOrthonormal) {
  const MatrixXd A = random_matrix(50, 20, 11);
  const auto svd = dense_svd(A);
  ASSERT_EQ(svd.U.cols(), 20);
  const MatrixXd rebuilt = svd.U * svd.sigma.asDiagonal() * svd.V.transpose();
  EXPECT_LE((rebuilt - A).norm() / A.norm(), 1e-12);
  EXPECT_LE((svd.U.transpose() * svd.U - MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((svd.V.transpose() * svd.V - MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-12);
  for (Index i = 1; i < svd.sigma.size(); ++i) EXPECT_GE(svd.sigma(i - 1), svd.sigma(i));
}

TEST(Linalg, SymmetricEigenDescending) {
  const MatrixXd A = random_matrix(8, 8, 5);
  const MatrixXd S = A * A.transpose();
  const auto eig = symmetric_eigen(S);
  for (Index i = 1; i < eig.values.size(); ++i) EXPECT_GE(eig.values(i - 1), eig.values(i));
  EXPECT_LT((S * eig.vectors - eig.vectors * eig.values.asDiagonal()).norm(), 1e-10 * S.norm());
}

TEST(Linalg, ComplexShiftedLUResidual) {
  // 1D Dirichlet Laplacian of size 200 with identity mass.
  const Index n = 200;
  std::vector<Eigen::Triplet<double>> trips;
  for (Index i = 0; i < n; ++i) {
    trips.emplace_back(i, i, 2.0);
    if (i + 1 < n) {
      trips.emplace_back(i, i + 1, -1.0);
      trips.emplace_back(i + 1, i, -1.0);
    }
  }
  SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  SparseMatrix<double> I(n, n);
  I.setIdentity();
  const Complex shift(1.0, 2.0);
  const auto lu = complex_lu(SparseSymMatrix{A, true}, shift, SparseSymMatrix{I, true});
  EXPECT_EQ(lu.kind(), FactorizationKind::complex_lu);
  VectorXc b(n);
  for (Index i = 0; i < n; ++i) b(i) = Complex(std::sin(0.1 * i), std::cos(0.3 * i));
  const VectorXc x = lu.solve(b);
  const SparseMatrix<Complex> shifted = A.cast<Complex>() + shift * shift * I.cast<Complex>();
  EXPECT_LE((shifted * x - b).norm(), 1e-12 * b.norm());
}

TEST(Linalg, AsymmetryMeasure) {
  MatrixXd A(2, 2);
  A << 1.0, 0.5, 0.5, 1.0;
  EXPECT_EQ(relative_asymmetry(A.sparseView()), 0.0);
  A(0, 1) = 0.0;
  EXPECT_NEAR(relative_asymmetry(A.sparseView()), 0.5, 1e-15);
}
