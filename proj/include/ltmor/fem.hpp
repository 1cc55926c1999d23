#pragma once

#include "ltmor/mesh.hpp"
#include "ltmor/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ltmor {

/// Symmetric 2x2 diffusion tensor A(x) of the scalar wave operator -div(A grad u).
class CoefficientField {
 public:
  using Evaluator = std::function<Eigen::Matrix2d(const Point2&)>;

  /// Axis-aligned rectangle carrying a constant tensor.
  struct Block {
    double x_min, x_max, y_min, y_max;
    Eigen::Matrix2d value;
  };

  CoefficientField();  // identity
  explicit CoefficientField(Evaluator eval);

  static CoefficientField identity();
  /// Piecewise-constant field: the first block containing x wins, identity elsewhere.
  static CoefficientField piecewise_constant(std::vector<Block> blocks);

  Eigen::Matrix2d operator()(const Point2& x) const { return eval_(x); }

 private:
  Evaluator eval_;
};

/// Normalized Gaussian source profile centred at x0 with width zeta.
struct SpatialSource {
  Point2 center{0.25, -0.15};
  double zeta = 0.05;

  double operator()(const Point2& x) const;
};

enum class DofSet { interior, all };

/// Which matrix realizes the V inner product.
enum class GramChoice { stiffness, stiffness_plus_mass };

/// P1 stiffness with barycentric evaluation of A(x). Restricted to interior
/// DOFs unless `dofs == DofSet::all`.
SparseSymMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& coeff = {},
                                   DofSet dofs = DofSet::interior);

/// Exact P1 mass matrix.
SparseSymMatrix assemble_mass(const Mesh& mesh, DofSet dofs = DofSet::interior);

SparseSymMatrix assemble_gram_V(const SparseSymMatrix& K, const SparseSymMatrix& M,
                                GramChoice choice = GramChoice::stiffness);

/// Nodal interpolant of the source on interior DOFs.
VectorXd interpolate_source(const Mesh& mesh, const SpatialSource& source);

/// b = M p_h, the discrete L2 load for unit temporal amplitude.
VectorXd build_source_vector(const Mesh& mesh, const SpatialSource& source,
                             const SparseSymMatrix& M);

/// Element matrices on a single triangle (used by assembly and exposed for testing).
Eigen::Matrix3d element_stiffness(const Point2& a, const Point2& b, const Point2& c,
                                  const Eigen::Matrix2d& coeff);
Eigen::Matrix3d element_mass(const Point2& a, const Point2& b, const Point2& c);

std::string to_string(GramChoice choice);
GramChoice gram_choice_from_string(const std::string& name);

}  // namespace ltmor
