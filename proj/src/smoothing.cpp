#include "sfem/smoothing.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sfem/error.hpp"

namespace sfem {

void validate(const MaterialModel& m) {
  if (!(m.youngs_modulus > 0.0)) throw Error(ErrorKind::InvalidArgument, "Young's modulus must be positive");
  if (!(m.poisson_ratio >= 0.0 && m.poisson_ratio < 0.5))
    throw Error(ErrorKind::InvalidArgument, "Poisson ratio must lie in [0, 0.5)");
  if (!(m.thickness > 0.0)) throw Error(ErrorKind::InvalidArgument, "thickness must be positive");
}

Matrix3d elasticity_matrix(const MaterialModel& m) {
  validate(m);
  const double nu = m.poisson_ratio;
  const double f = m.youngs_modulus / (1.0 - nu * nu);
  Matrix3d d;
  d << f, f * nu, 0.0,
       f * nu, f, 0.0,
       0.0, 0.0, f * 0.5 * (1.0 - nu);
  return d;
}

GaussRule gauss_legendre(int order) {
  switch (order) {
    case 1: return {{0.0}, {2.0}};
    case 2: {
      const double a = 1.0 / std::sqrt(3.0);
      return {{-a, a}, {1.0, 1.0}};
    }
    case 3: {
      const double a = std::sqrt(0.6);
      return {{-a, 0.0, a}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    case 4: {
      const double s = 2.0 * std::sqrt(6.0 / 5.0);
      const double a = std::sqrt((3.0 - s) / 7.0);
      const double b = std::sqrt((3.0 + s) / 7.0);
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      return {{-b, -a, a, b}, {wb, wa, wa, wb}};
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "quadrature order must be 1..4");
  }
}

Point2 boundary_normal_integral(const SmoothingCell& cell) {
  Point2 sum;
  const std::size_t n = cell.vertices.size();
  for (std::size_t s = 0; s < n; ++s) {
    const Point2 d = cell.vertices[(s + 1) % n] - cell.vertices[s];
    // outward normal of a CCW boundary, scaled by length
    sum = sum + Point2{d.y, -d.x};
  }
  return sum;
}

SmoothedBMatrix smoothed_b(const SmoothingCell& cell, const ElementApproximation& approximation, int quadrature) {
  if (!(cell.area > 0.0)) throw Error(ErrorKind::ZeroArea, "smoothing cell has non-positive area");
  const GaussRule rule = gauss_legendre(quadrature);

  SmoothedBMatrix b;
  b.cell_area = cell.area;
  const std::size_t n = cell.vertices.size();
  for (std::size_t s = 0; s < n; ++s) {
    const Point2 p0 = cell.vertices[s];
    const Point2 p1 = cell.vertices[(s + 1) % n];
    const Point2 d = p1 - p0;
    // outward normal times half the segment length (the Jacobian of [-1, 1] -> segment)
    const Point2 nds{0.5 * d.y, -0.5 * d.x};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double t = 0.5 * (rule.points[q] + 1.0);
      const ShapeValues sv = approximation.values(p0 + t * d);
      const double w = rule.weights[q];
      for (int i = 0; i < 4; ++i) {
        const double nx = w * sv[i] * nds.x;
        const double ny = w * sv[i] * nds.y;
        b.entries(0, 2 * i) += nx;
        b.entries(1, 2 * i + 1) += ny;
        b.entries(2, 2 * i) += ny;
        b.entries(2, 2 * i + 1) += nx;
      }
    }
  }
  b.entries /= cell.area;
  return b;
}

int StiffnessSettings::effective_quadrature() const {
  if (quadrature != 0) return quadrature;
  return scheme == Scheme::Averaged ? 1 : 2;
}

int symmetric_rank(const Matrix8d& k) {
  Eigen::SelfAdjointEigenSolver<Matrix8d> eig(k, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  int rank = 0;
  for (int i = 0; i < 8; ++i)
    if (std::abs(ev(i)) > 1e-10 * top) ++rank;
  return rank;
}

ElementStiffness element_stiffness(const Quad& quad, const StiffnessSettings& settings,
                                   const MaterialModel& material, std::size_t element_index) {
  const Matrix3d d = elasticity_matrix(material);
  const auto cells = subdivide(quad, settings.subcells, element_index, settings.orientation);
  const ElementApproximation approximation(settings.scheme, quad, settings.subcells, settings.orientation);
  const int order = settings.effective_quadrature();

  ElementStiffness out;
  if (!approximation.is_convex()) out.warnings.push_back("element " + std::to_string(element_index) + " is concave");
  for (const auto& cell : cells) {
    auto b = smoothed_b(cell, approximation, order);
    out.k += (material.thickness * b.cell_area) * (b.entries.transpose() * d * b.entries);
    out.cells.push_back(std::move(b));
  }
  out.rank = symmetric_rank(out.k);
  if (out.rank < 5)
    out.warnings.push_back("element " + std::to_string(element_index) + " stiffness has rank " +
                           std::to_string(out.rank) + " (" + std::to_string(5 - out.rank) +
                           " spurious zero-energy modes)");
  return out;
}

}  // namespace sfem
