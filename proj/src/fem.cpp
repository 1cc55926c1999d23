#include "ltmor/fem.hpp"

#include <cmath>
#include <numbers>

namespace ltmor {

CoefficientField::CoefficientField() : eval_([](const Point2&) { return Eigen::Matrix2d::Identity().eval(); }) {}

CoefficientField::CoefficientField(Evaluator eval) : eval_(std::move(eval)) {
  if (!eval_) {
    throw std::invalid_argument("CoefficientField: empty evaluator");
  }
}

CoefficientField CoefficientField::identity() { return CoefficientField{}; }

CoefficientField CoefficientField::piecewise_constant(std::vector<Block> blocks) {
  for (const auto& b : blocks) {
    if (!(b.x_min < b.x_max && b.y_min < b.y_max)) {
      throw std::invalid_argument("CoefficientField: degenerate block");
    }
    if (std::abs(b.value(0, 1) - b.value(1, 0)) > 0.0) {
      throw std::invalid_argument("CoefficientField: block tensor must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(b.value, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
      throw std::invalid_argument("CoefficientField: block tensor must be positive definite");
    }
  }
  return CoefficientField([blocks = std::move(blocks)](const Point2& x) -> Eigen::Matrix2d {
    for (const auto& b : blocks) {
      if (x.x() >= b.x_min && x.x() <= b.x_max && x.y() >= b.y_min && x.y() <= b.y_max) {
        return b.value;
      }
    }
    return Eigen::Matrix2d::Identity();
  });
}

double SpatialSource::operator()(const Point2& x) const {
  const double r2 = (x - center).squaredNorm();
  return std::exp(-r2 / (2.0 * zeta * zeta)) / (std::sqrt(2.0 * std::numbers::pi) * zeta);
}

Eigen::Matrix3d element_stiffness(const Point2& a, const Point2& b, const Point2& c,
                                  const Eigen::Matrix2d& coeff) {
  // Gradients of barycentric coordinates: grad(lambda_i) = rot90(opposite edge) / (2|T|).
  const double two_area = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
  Eigen::Matrix<double, 2, 3> grads;
  grads.col(0) << b.y() - c.y(), c.x() - b.x();
  grads.col(1) << c.y() - a.y(), a.x() - c.x();
  grads.col(2) << a.y() - b.y(), b.x() - a.x();
  grads /= two_area;
  return 0.5 * std::abs(two_area) * grads.transpose() * coeff * grads;
}

Eigen::Matrix3d element_mass(const Point2& a, const Point2& b, const Point2& c) {
  const double area =
      0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
  Eigen::Matrix3d m;
  m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  return (area / 12.0) * m;
}

namespace {

template <typename ElementKernel>
SparseSymMatrix assemble(const Mesh& mesh, DofSet dofs, ElementKernel&& kernel) {
  const bool interior_only = dofs == DofSet::interior;
  const Index n = interior_only ? mesh.num_interior() : mesh.num_vertices();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(9 * mesh.num_triangles()));

  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    const Eigen::Matrix3d local =
        kernel(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
    std::array<int, 3> dof{};
    for (int i = 0; i < 3; ++i) {
      if (interior_only) {
        const auto& idx = mesh.interior_index[tri[i]];
        dof[i] = idx ? *idx : -1;
      } else {
        dof[i] = tri[i];
      }
    }
    for (int i = 0; i < 3; ++i) {
      if (dof[i] < 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (dof[j] < 0) continue;
        triplets.emplace_back(dof[i], dof[j], local(i, j));
      }
    }
  }
  SparseSymMatrix out;
  out.data.resize(n, n);
  out.data.setFromTriplets(triplets.begin(), triplets.end());
  out.data.makeCompressed();
  out.symmetric = true;
  return out;
}

}  // namespace

SparseSymMatrix assemble_stiffness(const Mesh& mesh, const CoefficientField& coeff, DofSet dofs) {
  return assemble(mesh, dofs, [&](const Point2& a, const Point2& b, const Point2& c) {
    const Point2 centroid = (a + b + c) / 3.0;
    return element_stiffness(a, b, c, coeff(centroid));
  });
}

SparseSymMatrix assemble_mass(const Mesh& mesh, DofSet dofs) {
  return assemble(mesh, dofs, [](const Point2& a, const Point2& b, const Point2& c) {
    return element_mass(a, b, c);
  });
}

SparseSymMatrix assemble_gram_V(const SparseSymMatrix& K, const SparseSymMatrix& M,
                                GramChoice choice) {
  if (K.rows() != M.rows() || K.cols() != M.cols()) {
    throw std::invalid_argument("assemble_gram_V: dimension mismatch");
  }
  if (choice == GramChoice::stiffness) return K;
  SparseSymMatrix out;
  out.data = K.data + M.data;
  out.data.makeCompressed();
  return out;
}

VectorXd interpolate_source(const Mesh& mesh, const SpatialSource& source) {
  if (!(source.zeta > 0.0)) {
    throw std::invalid_argument("interpolate_source: zeta must be positive");
  }
  VectorXd p(mesh.num_interior());
  for (Index i = 0; i < mesh.num_interior(); ++i) {
    p(i) = source(mesh.vertices[mesh.interior_vertices[static_cast<std::size_t>(i)]]);
  }
  return p;
}

VectorXd build_source_vector(const Mesh& mesh, const SpatialSource& source,
                             const SparseSymMatrix& M) {
  if (M.rows() != mesh.num_interior()) {
    throw std::invalid_argument("build_source_vector: mass matrix must act on interior DOFs");
  }
  return M.data * interpolate_source(mesh, source);
}

std::string to_string(GramChoice choice) {
  return choice == GramChoice::stiffness ? "K" : "K+M";
}

GramChoice gram_choice_from_string(const std::string& name) {
  if (name == "K" || name == "stiffness") return GramChoice::stiffness;
  if (name == "K+M" || name == "stiffness_plus_mass") return GramChoice::stiffness_plus_mass;
  throw std::invalid_argument("unknown gram choice '" + name + "' (expected K or K+M)");
}

}  // namespace ltmor
