#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "sfem/mesh.hpp"
#include "sfem/shapefn.hpp"

namespace sfem {

using Matrix3d = Eigen::Matrix3d;
using StrainMatrix = Eigen::Matrix<double, 3, 8>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Vector8d = Eigen::Matrix<double, 8, 1>;

/// Isotropic plane-stress material.
struct MaterialModel {
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.0;
  double thickness = 1.0;
};

/// Throws InvalidArgument unless E > 0, 0 <= nu < 0.5 and thickness > 0.
void validate(const MaterialModel& material);

/// Plane-stress D with engineering shear strain ordering (xx, yy, xy).
Matrix3d elasticity_matrix(const MaterialModel& material);

/// Gauss-Legendre points and weights on [-1, 1], 1 to 4 points.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

/// Cell-averaged strain-displacement operator. Column pairs (2I, 2I+1) belong to element node I.
struct SmoothedBMatrix {
  StrainMatrix entries = StrainMatrix::Zero();
  double cell_area = 0.0;
};

/// Integrates N_I times the outward normal around the cell boundary, one Gauss rule per boundary
/// segment, and divides by the cell area. Shape-function errors from the scheme propagate.
SmoothedBMatrix smoothed_b(const SmoothingCell& cell, const ElementApproximation& approximation, int quadrature);

/// Sum of the outward unit normal times length over the cell boundary (zero for a closed polygon).
Point2 boundary_normal_integral(const SmoothingCell& cell);

struct StiffnessSettings {
  Scheme scheme = Scheme::Wachspress;
  int subcells = 4;
  /// Gauss points per cell-boundary segment; 0 selects the scheme default (2 for Wachspress and
  /// Lagrange, 1 for averaged).
  int quadrature = 0;
  SplitOrientation orientation = SplitOrientation::Edge12To34;

  int effective_quadrature() const;
};

struct ElementStiffness {
  Matrix8d k = Matrix8d::Zero();
  std::vector<SmoothedBMatrix> cells;
  /// Number of eigenvalues above 1e-10 of the largest.
  int rank = 0;
  std::vector<std::string> warnings;
};

/// K_e = sum over cells of t * A_c * B_c^T D B_c.
ElementStiffness element_stiffness(const Quad& quad, const StiffnessSettings& settings,
                                   const MaterialModel& material, std::size_t element_index = 0);

/// Numerical rank of a symmetric 8x8 matrix, relative threshold 1e-10.
int symmetric_rank(const Matrix8d& k);

}  // namespace sfem
