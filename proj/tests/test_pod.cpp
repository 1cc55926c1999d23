#include "ltmor/fem.hpp"
#include "ltmor/pod.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace ltmor;

namespace {

MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  MatrixXd A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = dist(rng);
  return A;
}

SparseSymMatrix identity(Index n) {
  SparseMatrix<double> I(n, n);
  I.setIdentity();
  return {I, true};
}

SparseSymMatrix random_spd(Index n, std::uint64_t seed) {
  const MatrixXd A = random_matrix(n, n, seed);
  const MatrixXd S = A * A.transpose() + static_cast<double>(n) * MatrixXd::Identity(n, n);
  return {S.sparseView(), true};
}

VectorXd random_weights(Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  VectorXd w(m);
  for (Index j = 0; j < m; ++j) w(j) = dist(rng);
  return w;
}

}  // namespace

TEST(Pod, RankOneSnapshots) {
  const VectorXd v = VectorXd::LinSpaced(6, 1.0, 2.0);
  MatrixXd S(6, 4);
  for (Index j = 0; j < 4; ++j) S.col(j) = (j + 1.0) * v;
  const auto basis = build_reduced_basis(S, VectorXd::Ones(4), identity(6), 3);
  EXPECT_EQ(basis.rank, 1);
  EXPECT_TRUE(basis.truncated);
  ASSERT_EQ(basis.dimension(), 1);
  EXPECT_NEAR(std::abs(basis.Phi.col(0).dot(v.normalized())), 1.0, 1e-14);
  EXPECT_NEAR(basis.singular_values(0), v.norm() * std::sqrt(30.0), 1e-12);
}

TEST(Pod, TwoByThreeToy) {
  const double r = std::sqrt(0.5);
  MatrixXd S(2, 3);
  S << 1.0, 1.0, 1.0, r, 0.0, -r;
  const auto basis = build_reduced_basis(S, VectorXd::Ones(3), identity(2), 1);
  ASSERT_EQ(basis.singular_values.size(), 2);
  EXPECT_NEAR(basis.singular_values(0), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(basis.singular_values(1), 1.0, 1e-14);
  EXPECT_NEAR(pod_residual(S, VectorXd::Ones(3), identity(2), basis.Phi), 1.0, 1e-14);
  EXPECT_NEAR(discarded_energy(basis, 1), 1.0, 1e-14);
}

TEST(Pod, BasisIsBOrthonormal) {
  const MatrixXd S = random_matrix(50, 20, 1);
  const auto B = random_spd(50, 2);
  const auto basis = build_reduced_basis(S, random_weights(20, 3), B, 12);
  EXPECT_EQ(basis.dimension(), 12);
  EXPECT_FALSE(basis.truncated);
  const MatrixXd G = basis.Phi.transpose() * (B.data * basis.Phi);
  EXPECT_LE((G - MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pod, ResidualEqualsDiscardedEnergy) {
  const MatrixXd S = random_matrix(50, 20, 4);
  const auto B = random_spd(50, 5);
  const VectorXd w = random_weights(20, 6);
  const auto full = build_reduced_basis(S, w, B, 20);
  const double total = pod_residual(S, w, B, MatrixXd::Zero(50, 0));
  EXPECT_NEAR(total, full.singular_values.squaredNorm(), 1e-10 * total);
  double previous = total;
  for (Index R = 0; R <= 20; ++R) {
    const double res = pod_residual(S, w, B, full.leading(R).Phi);
    EXPECT_NEAR(res, discarded_energy(full, R), 1e-10 * total);
    EXPECT_LE(res, previous * (1.0 + 1e-12));
    previous = res;
  }
  EXPECT_LE(pod_residual(S, w, B, full.Phi), 1e-20 * total);
}

TEST(Pod, OptimalAmongBOrthonormalBases) {
  const MatrixXd S = random_matrix(30, 10, 7);
  const auto B = random_spd(30, 8);
  const VectorXd w = random_weights(10, 9);
  const Index R = 4;
  const auto pod = build_reduced_basis(S, w, B, R);
  const double best = pod_residual(S, w, B, pod.Phi);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    // B-orthonormalize a random subspace via a Cholesky of its Gram matrix.
    const MatrixXd X = random_matrix(30, R, 100 + trial);
    const MatrixXd G = X.transpose() * (B.data * X);
    const Eigen::LLT<MatrixXd> llt(G);
    const MatrixXd Q = llt.matrixU().solve(X.transpose()).transpose();
    EXPECT_GE(pod_residual(S, w, B, Q), best * (1.0 - 1e-12));
  }
}

TEST(Pod, GramRouteAgreesWithDirect) {
  const Mesh mesh = build_unit_square_mesh(10);
  const auto K = assemble_stiffness(mesh);
  const MatrixXd S = random_matrix(K.rows(), 15, 10);
  const VectorXd w = random_weights(15, 11);
  const auto direct = build_reduced_basis(S, w, K, 8);
  const auto gram = build_reduced_basis(S, w, K, 8, {SvdMethod::gram, "K"});
  EXPECT_LE((direct.singular_values - gram.singular_values).norm(),
            1e-10 * direct.singular_values.norm());
  // Same B-orthogonal projector.
  const MatrixXd Pd = direct.Phi * direct.Phi.transpose() * K.data;
  const MatrixXd Pg = gram.Phi * gram.Phi.transpose() * K.data;
  EXPECT_LE((Pd - Pg).norm(), 1e-8 * Pd.norm());
}

TEST(Pod, ZeroAndFullRank) {
  const MatrixXd S = random_matrix(12, 5, 12);
  const auto none = build_reduced_basis(S, VectorXd::Ones(5), identity(12), 0);
  EXPECT_EQ(none.dimension(), 0);
  EXPECT_EQ(none.rank, 5);
  EXPECT_FALSE(none.truncated);
  const auto all = build_reduced_basis(S, VectorXd::Ones(5), identity(12), 5);
  EXPECT_EQ(all.dimension(), 5);
  EXPECT_FALSE(all.truncated);
}

TEST(Pod, ValidatesInputs) {
  const MatrixXd S = random_matrix(6, 3, 13);
  EXPECT_THROW(build_reduced_basis(S, VectorXd::Ones(2), identity(6), 1), std::invalid_argument);
  EXPECT_THROW(build_reduced_basis(S, VectorXd::Ones(3), identity(5), 1), std::invalid_argument);
  EXPECT_THROW(build_reduced_basis(S, -VectorXd::Ones(3), identity(6), 1), std::invalid_argument);
  EXPECT_THROW(build_reduced_basis(S, VectorXd::Ones(3), identity(6), -1), std::invalid_argument);
  const auto basis = build_reduced_basis(S, VectorXd::Ones(3), identity(6), 2);
  EXPECT_THROW(basis.leading(3), std::invalid_argument);
}
