#pragma once

#include <array>
#include <string>
#include <variant>

#include "sfem/geometry.hpp"
#include "sfem/mesh.hpp"

namespace sfem {

/// Shape-function values N_1..N_4 at one point.
struct ShapeValues {
  std::array<double, 4> n{};

  double sum() const { return n[0] + n[1] + n[2] + n[3]; }
  double operator[](int i) const { return n[i]; }
};

using ShapeGradients = std::array<Point2, 4>;

/// l(x, y) = a x + b y + c with a^2 + b^2 = 1.
struct LineEquation {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(Point2 p) const { return a * p.x + b * p.y + c; }
  Point2 gradient() const { return {a, b}; }
};

/// Unit-normalised line through p and q, positive to the left of the direction p -> q (the
/// interior side of a counter-clockwise polygon edge). Throws CoincidentPoints if p == q.
LineEquation line_through(Point2 p, Point2 q);

/// Wachspress rational interpolant on a quadrilateral in physical coordinates.
///
/// Side s runs from node s to node s+1. The wedge of node i is the product of the two side lines
/// not incident to node i, scaled by kappa_i; N_i is the wedge divided by the adjoint (the sum of
/// all four wedges). kappa_i is proportional to the signed area of the corner triangle at node i
/// times the lengths of the two non-incident sides, which makes every N_i affine along the sides
/// and reproduces linear fields exactly.
class WachspressBasis {
 public:
  /// Throws WedgeDegenerate when a corner triangle collapses or a wedge vanishes at its own node,
  /// InvalidElement if the quad is not counter-clockwise.
  explicit WachspressBasis(const Quad& quad);

  /// Side lines in coordinates relative to origin(), the vertex average.
  const std::array<LineEquation, 4>& lines() const { return lines_; }
  Point2 origin() const { return origin_; }
  const std::array<double, 4>& kappas() const { return kappas_; }
  const Quad& nodes() const { return nodes_; }
  bool is_convex() const { return convex_; }

  std::array<double, 4> wedges(Point2 p) const;
  /// Throws AdjointZero where the adjoint vanishes (only possible on concave quads).
  ShapeValues values(Point2 p) const;
  ShapeGradients gradients(Point2 p) const;

 private:
  double checked_adjoint(const std::array<double, 4>& w) const;

  Quad nodes_;
  Point2 origin_;
  std::array<LineEquation, 4> lines_{};
  std::array<double, 4> kappas_{};
  double wedge_scale_ = 1.0;
  bool convex_ = true;
};

/// Bilinear basis {1, x, y, xy} fitted through the nodes in physical coordinates.
///
/// Coordinates are centred on the vertex average and scaled by the element diameter before the
/// moment matrix is formed, so the existence threshold on its determinant is scale-free.
class LagrangeBasis {
 public:
  /// Throws NonExistent when the moment matrix is singular.
  explicit LagrangeBasis(const Quad& quad);

  /// Rows are the monomials 1, x, y, xy (local coordinates); columns are nodes.
  const std::array<std::array<double, 4>, 4>& coefficients() const { return coeffs_; }
  double moment_determinant() const { return determinant_; }

  ShapeValues values(Point2 p) const;
  ShapeGradients gradients(Point2 p) const;

 private:
  Point2 origin_;
  double scale_ = 1.0;
  double determinant_ = 0.0;
  std::array<std::array<double, 4>, 4> coeffs_{};
};

/// Table of averaged shape-function values at the nine element sites: nodes 1-4, side midpoints
/// 5-8 (sides 1-2, 2-3, 3-4, 4-1) and the bimedian intersection 9.
const ShapeValues& averaged_site_values(int site);

/// Averaged shape functions, defined on the boundary skeleton of the k-cell subdivision.
///
/// At a site the tabulated row is returned unchanged; elsewhere on a skeleton segment the two end
/// rows are interpolated linearly. Points off the skeleton throw OffSkeleton.
class AveragedBasis {
 public:
  AveragedBasis(const Quad& quad, int k, SplitOrientation orientation = SplitOrientation::Edge12To34);

  Point2 site(int site) const { return sites_[site - 1]; }
  int subcells() const { return k_; }
  ShapeValues values(Point2 p) const;

 private:
  std::array<Point2, 9> sites_{};
  std::vector<std::array<int, 2>> segments_;
  int k_ = 4;
  double tolerance_ = 0.0;
};

enum class Scheme { Wachspress, Averaged, Lagrange };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

/// One element's shape-function evaluator for the selected scheme.
class ElementApproximation {
 public:
  ElementApproximation(Scheme scheme, const Quad& quad, int k,
                       SplitOrientation orientation = SplitOrientation::Edge12To34);

  Scheme scheme() const;
  ShapeValues values(Point2 p) const;
  /// Wachspress and Lagrange only; throws InvalidArgument for the averaged scheme.
  ShapeGradients gradients(Point2 p) const;
  bool is_convex() const { return convex_; }

 private:
  std::variant<WachspressBasis, AveragedBasis, LagrangeBasis> basis_;
  bool convex_ = true;
};

}  // namespace sfem
