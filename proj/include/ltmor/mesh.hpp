#pragma once

#include "ltmor/types.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ltmor {

using Point2 = Eigen::Vector2d;

/// Conforming triangulation of the square (-1/2, 1/2)^2 with homogeneous
/// Dirichlet data on the whole boundary. Only interior vertices carry DOFs.
struct Mesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<bool> boundary_mask;
  std::vector<std::optional<int>> interior_index;
  std::vector<int> interior_vertices;  // inverse of interior_index
  double h = 0.0;                      // max edge length

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles.size()); }
  Index num_interior() const { return static_cast<Index>(interior_vertices.size()); }

  double signed_area(Index t) const;

  /// Scatter an interior-DOF vector onto all vertices (zero on the boundary).
  VectorXd extend_to_vertices(const Eigen::Ref<const VectorXd>& interior) const;
  /// Restrict a per-vertex vector to interior DOFs.
  VectorXd restrict_to_interior(const Eigen::Ref<const VectorXd>& nodal) const;
};

/// Uniform-diagonal split of an n x n grid: every cell is cut along its
/// (SW, NE) diagonal. h = sqrt(2)/n.
///
/// Throws std::invalid_argument for n < 2.
Mesh build_unit_square_mesh(int n);

}  // namespace ltmor
