#include "ltmor/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ltmor {

namespace {

constexpr double kBoundaryTol = 1e-12;

bool on_boundary(const Point2& p) {
  return std::abs(std::abs(p.x()) - 0.5) <= kBoundaryTol ||
         std::abs(std::abs(p.y()) - 0.5) <= kBoundaryTol;
}

}  // namespace

double Mesh::signed_area(Index t) const {
  const auto& tri = triangles[static_cast<std::size_t>(t)];
  const Point2& a = vertices[tri[0]];
  const Point2& b = vertices[tri[1]];
  const Point2& c = vertices[tri[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

VectorXd Mesh::extend_to_vertices(const Eigen::Ref<const VectorXd>& interior) const {
  if (interior.size() != num_interior()) {
    throw std::invalid_argument("extend_to_vertices: size mismatch");
  }
  VectorXd nodal = VectorXd::Zero(num_vertices());
  for (Index i = 0; i < num_interior(); ++i) {
    nodal(interior_vertices[static_cast<std::size_t>(i)]) = interior(i);
  }
  return nodal;
}

VectorXd Mesh::restrict_to_interior(const Eigen::Ref<const VectorXd>& nodal) const {
  if (nodal.size() != num_vertices()) {
    throw std::invalid_argument("restrict_to_interior: size mismatch");
  }
  VectorXd interior(num_interior());
  for (Index i = 0; i < num_interior(); ++i) {
    interior(i) = nodal(interior_vertices[static_cast<std::size_t>(i)]);
  }
  return interior;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 2) {
    throw std::invalid_argument("build_unit_square_mesh: n must be >= 2, got " + std::to_string(n));
  }
  Mesh mesh;
  const int nv = n + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(nv * nv));
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nv; ++i) {
      // Snap the outer rows/columns exactly onto the boundary.
      const double x = (i == n) ? 0.5 : -0.5 + static_cast<double>(i) / n;
      const double y = (j == n) ? 0.5 : -0.5 + static_cast<double>(j) / n;
      mesh.vertices.emplace_back(x, y);
    }
  }

  mesh.triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = j * nv + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + nv;
      const int v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  mesh.boundary_mask.resize(mesh.vertices.size());
  mesh.interior_index.resize(mesh.vertices.size());
  int next = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    mesh.boundary_mask[v] = on_boundary(mesh.vertices[v]);
    if (!mesh.boundary_mask[v]) {
      mesh.interior_index[v] = next++;
      mesh.interior_vertices.push_back(static_cast<int>(v));
    }
  }

  double h = 0.0;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      h = std::max(h, (mesh.vertices[tri[e]] - mesh.vertices[tri[(e + 1) % 3]]).norm());
    }
  }
  mesh.h = h;
  return mesh;
}

}  // namespace ltmor
