#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <stdexcept>
#include <string>

namespace ltmor {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>;

using VectorXd = Vector<double>;
using VectorXc = Vector<Complex>;
using MatrixXd = Matrix<double>;
using MatrixXc = Matrix<Complex>;

/// Real sparse operator with full (both triangles) storage. FE operators are
/// symmetric; `symmetric` records whether that was established at assembly.
struct SparseSymMatrix {
  SparseMatrix<double> data;
  bool symmetric = true;

  Index rows() const { return data.rows(); }
  Index cols() const { return data.cols(); }
};

/// Raised when a numerical procedure cannot complete (failed factorization,
/// overflow, zero reference norm).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltmor
