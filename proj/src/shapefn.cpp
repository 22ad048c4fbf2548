#include "sfem/shapefn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sfem/error.hpp"

namespace sfem {

LineEquation line_through(Point2 p, Point2 q) {
  const Point2 d = q - p;
  const double len = norm(d);
  if (len == 0.0) throw Error(ErrorKind::CoincidentPoints, "line needs two distinct points");
  // left normal of p -> q
  const double a = -d.y / len;
  const double b = d.x / len;
  return {a, b, -(a * p.x + b * p.y)};
}

// ---------------------------------------------------------------------------
// Wachspress

WachspressBasis::WachspressBasis(const Quad& quad) : nodes_(quad), origin_(vertex_centroid(quad)) {
  if (!(signed_area(quad) > 0.0)) throw Error(ErrorKind::InvalidElement, "Wachspress basis needs a CCW quad");
  for (int s = 0; s < 4; ++s) lines_[s] = line_through(quad[s] - origin_, quad[(s + 1) % 4] - origin_);

  const double h = diameter(quad);
  const double area = signed_area(quad);
  for (int i = 0; i < 4; ++i) {
    const Point2 prev = quad[(i + 3) % 4];
    const Point2 next = quad[(i + 1) % 4];
    const double corner = 0.5 * cross(next - quad[i], prev - quad[i]);
    if (std::abs(corner) <= 1e-14 * h * h)
      throw Error(ErrorKind::WedgeDegenerate, "corner triangle at node " + std::to_string(i + 1) + " is flat");
    if (corner < 0.0) convex_ = false;
    const double side_a = norm(quad[(i + 2) % 4] - quad[(i + 1) % 4]);
    const double side_b = norm(quad[(i + 3) % 4] - quad[(i + 2) % 4]);
    kappas_[i] = corner * side_a * side_b / (area * area);
  }

  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(wedges(quad[i])[i]));
  wedge_scale_ = scale;
  for (int i = 0; i < 4; ++i) {
    const double own = wedges(quad[i])[i];
    if (std::abs(own) <= 1e-14 * scale)
      throw Error(ErrorKind::WedgeDegenerate,
                  "wedge of node " + std::to_string(i + 1) + " vanishes at its own node");
  }

  // Kronecker delta at the nodes
  for (int j = 0; j < 4; ++j) {
    const auto n = values(quad[j]);
    for (int i = 0; i < 4; ++i)
      if (std::abs(n[i] - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw Error(ErrorKind::WedgeDegenerate, "Kronecker delta check failed at node " + std::to_string(j + 1));
  }
}

std::array<double, 4> WachspressBasis::wedges(Point2 p) const {
  p = p - origin_;
  std::array<double, 4> l{};
  for (int s = 0; s < 4; ++s) l[s] = lines_[s](p);
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) w[i] = kappas_[i] * l[(i + 1) % 4] * l[(i + 2) % 4];
  return w;
}

double WachspressBasis::checked_adjoint(const std::array<double, 4>& w) const {
  const double adjoint = w[0] + w[1] + w[2] + w[3];
  if (std::abs(adjoint) < 1e-12 * wedge_scale_)
    throw Error(ErrorKind::AdjointZero, "Wachspress adjoint vanishes at the evaluation point");
  return adjoint;
}

ShapeValues WachspressBasis::values(Point2 p) const {
  const auto w = wedges(p);
  const double adjoint = checked_adjoint(w);
  ShapeValues out;
  for (int i = 0; i < 4; ++i) out.n[i] = w[i] / adjoint;
  return out;
}

ShapeGradients WachspressBasis::gradients(Point2 p) const {
  p = p - origin_;
  std::array<double, 4> l{};
  for (int s = 0; s < 4; ++s) l[s] = lines_[s](p);
  std::array<double, 4> w{};
  ShapeGradients dw{};
  Point2 dsum;
  for (int i = 0; i < 4; ++i) {
    const int a = (i + 1) % 4;
    const int b = (i + 2) % 4;
    w[i] = kappas_[i] * l[a] * l[b];
    dw[i] = kappas_[i] * (l[b] * lines_[a].gradient() + l[a] * lines_[b].gradient());
    dsum = dsum + dw[i];
  }
  const double adjoint = checked_adjoint(w);
  ShapeGradients out{};
  for (int i = 0; i < 4; ++i) out[i] = (1.0 / adjoint) * (dw[i] - (w[i] / adjoint) * dsum);
  return out;
}

// ---------------------------------------------------------------------------
// Non-mapped Lagrange

LagrangeBasis::LagrangeBasis(const Quad& quad) {
  origin_ = vertex_centroid(quad);
  scale_ = diameter(quad);
  if (!(scale_ > 0.0)) throw Error(ErrorKind::NonExistent, "all nodes coincide");

  Eigen::Matrix4d moments;
  for (int i = 0; i < 4; ++i) {
    const double x = (quad[i].x - origin_.x) / scale_;
    const double y = (quad[i].y - origin_.y) / scale_;
    moments.row(i) << 1.0, x, y, x * y;
  }
  determinant_ = moments.determinant();
  if (!(std::abs(determinant_) >= 1e-12))
    throw Error(ErrorKind::NonExistent, "moment matrix of {1, x, y, xy} is singular at the nodes");
  const Eigen::Matrix4d inv = moments.inverse();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) coeffs_[r][c] = inv(r, c);
}

ShapeValues LagrangeBasis::values(Point2 p) const {
  const double x = (p.x - origin_.x) / scale_;
  const double y = (p.y - origin_.y) / scale_;
  const std::array<double, 4> mono{1.0, x, y, x * y};
  ShapeValues out;
  for (int i = 0; i < 4; ++i)
    for (int r = 0; r < 4; ++r) out.n[i] += mono[r] * coeffs_[r][i];
  return out;
}

ShapeGradients LagrangeBasis::gradients(Point2 p) const {
  const double x = (p.x - origin_.x) / scale_;
  const double y = (p.y - origin_.y) / scale_;
  ShapeGradients out{};
  for (int i = 0; i < 4; ++i) {
    out[i].x = (coeffs_[1][i] + y * coeffs_[3][i]) / scale_;
    out[i].y = (coeffs_[2][i] + x * coeffs_[3][i]) / scale_;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Averaged

const ShapeValues& averaged_site_values(int site) {
  static const std::array<ShapeValues, 9> table{{
      {{1.0, 0.0, 0.0, 0.0}},
      {{0.0, 1.0, 0.0, 0.0}},
      {{0.0, 0.0, 1.0, 0.0}},
      {{0.0, 0.0, 0.0, 1.0}},
      {{0.5, 0.5, 0.0, 0.0}},
      {{0.0, 0.5, 0.5, 0.0}},
      {{0.0, 0.0, 0.5, 0.5}},
      {{0.5, 0.0, 0.0, 0.5}},
      {{0.25, 0.25, 0.25, 0.25}},
  }};
  if (site < 1 || site > 9) throw Error(ErrorKind::InvalidArgument, "site must be in 1..9");
  return table[site - 1];
}

AveragedBasis::AveragedBasis(const Quad& quad, int k, SplitOrientation orientation) : k_(k) {
  if (k != 1 && k != 2 && k != 4)
    throw Error(ErrorKind::UnsupportedSubdivision, "k must be 1, 2 or 4 (got " + std::to_string(k) + ")");
  for (int i = 0; i < 4; ++i) {
    sites_[i] = quad[i];
    sites_[4 + i] = midpoint(quad[i], quad[(i + 1) % 4]);
  }
  sites_[8] = vertex_centroid(quad);
  tolerance_ = 1e-10 * diameter(quad);

  // sides, split at their midpoints
  segments_ = {{1, 5}, {5, 2}, {2, 6}, {6, 3}, {3, 7}, {7, 4}, {4, 8}, {8, 1}};
  const bool first_bimedian = k == 4 || (k == 2 && orientation == SplitOrientation::Edge12To34);
  const bool second_bimedian = k == 4 || (k == 2 && orientation == SplitOrientation::Edge23To41);
  if (first_bimedian) {
    segments_.push_back({5, 9});
    segments_.push_back({9, 7});
  }
  if (second_bimedian) {
    segments_.push_back({6, 9});
    segments_.push_back({9, 8});
  }
}

ShapeValues AveragedBasis::values(Point2 p) const {
  for (const auto& seg : segments_) {
    for (int s : seg)
      if (norm(p - sites_[s - 1]) <= tolerance_) return averaged_site_values(s);
  }
  for (const auto& [s0, s1] : segments_) {
    const Point2 a = sites_[s0 - 1];
    const Point2 d = sites_[s1 - 1] - a;
    const double len2 = dot(d, d);
    const double t = dot(p - a, d) / len2;
    if (t < 0.0 || t > 1.0) continue;
    const double off = std::abs(cross(d, p - a)) / std::sqrt(len2);
    if (off > tolerance_) continue;
    const auto& va = averaged_site_values(s0);
    const auto& vb = averaged_site_values(s1);
    ShapeValues out;
    for (int i = 0; i < 4; ++i) out.n[i] = (1.0 - t) * va[i] + t * vb[i];
    return out;
  }
  throw Error(ErrorKind::OffSkeleton, "point is not on a smoothing-cell boundary of this element");
}

// ---------------------------------------------------------------------------

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Wachspress: return "wachspress";
    case Scheme::Averaged: return "averaged";
    case Scheme::Lagrange: return "lagrange";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& text) {
  if (text == "wachspress" || text == "A") return Scheme::Wachspress;
  if (text == "averaged" || text == "B") return Scheme::Averaged;
  if (text == "lagrange" || text == "C") return Scheme::Lagrange;
  throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + text + "'");
}

namespace {

std::variant<WachspressBasis, AveragedBasis, LagrangeBasis> make_basis(Scheme scheme, const Quad& quad, int k,
                                                                       SplitOrientation orientation) {
  switch (scheme) {
    case Scheme::Wachspress: return WachspressBasis(quad);
    case Scheme::Averaged: return AveragedBasis(quad, k, orientation);
    case Scheme::Lagrange: return LagrangeBasis(quad);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown scheme");
}

bool quad_is_convex(const Quad& q) {
  for (int i = 0; i < 4; ++i)
    if (cross(q[(i + 1) % 4] - q[i], q[(i + 2) % 4] - q[(i + 1) % 4]) <= 0.0) return false;
  return true;
}

}  // namespace

ElementApproximation::ElementApproximation(Scheme scheme, const Quad& quad, int k, SplitOrientation orientation)
    : basis_(make_basis(scheme, quad, k, orientation)), convex_(quad_is_convex(quad)) {}

Scheme ElementApproximation::scheme() const {
  return static_cast<Scheme>(basis_.index());
}

ShapeValues ElementApproximation::values(Point2 p) const {
  return std::visit([p](const auto& b) { return b.values(p); }, basis_);
}

ShapeGradients ElementApproximation::gradients(Point2 p) const {
  if (const auto* w = std::get_if<WachspressBasis>(&basis_)) return w->gradients(p);
  if (const auto* l = std::get_if<LagrangeBasis>(&basis_)) return l->gradients(p);
  throw Error(ErrorKind::InvalidArgument, "averaged shape functions have no pointwise gradient");
}

}  // namespace sfem
