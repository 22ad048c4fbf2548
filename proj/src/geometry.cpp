#include "sfem/geometry.hpp"

#include <algorithm>

#include "sfem/error.hpp"

namespace sfem {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::DegenerateElement: return "DegenerateElement";
    case ErrorKind::UnsupportedSubdivision: return "UnsupportedSubdivision";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::WedgeDegenerate: return "WedgeDegenerate";
    case ErrorKind::AdjointZero: return "AdjointZero";
    case ErrorKind::NonExistent: return "NonExistent";
    case ErrorKind::OffSkeleton: return "OffSkeleton";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::UnknownTag: return "UnknownTag";
    case ErrorKind::AllDofsFixed: return "AllDofsFixed";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

double signed_area(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  if (n == 0) return 0.0;
  const Point2 o = polygon[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(polygon[i] - o, polygon[i + 1] - o);
  return 0.5 * twice;
}

Point2 area_centroid(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  // shift to the first vertex to limit cancellation for far-from-origin polygons
  const Point2 o = polygon[0];
  double twice_area = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = polygon[i] - o;
    const Point2 b = polygon[(i + 1) % n] - o;
    const double c = cross(a, b);
    twice_area += c;
    cx += (a.x + b.x) * c;
    cy += (a.y + b.y) * c;
  }
  return {o.x + cx / (3.0 * twice_area), o.y + cy / (3.0 * twice_area)};
}

Point2 vertex_centroid(std::span<const Point2> polygon) {
  Point2 c;
  for (const auto& p : polygon) c = c + p;
  return (1.0 / static_cast<double>(polygon.size())) * c;
}

double diameter(std::span<const Point2> polygon) {
  double d = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i)
    for (std::size_t j = i + 1; j < polygon.size(); ++j) d = std::max(d, norm(polygon[i] - polygon[j]));
  return d;
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

bool is_simple(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (polygon[i] == polygon[(i + 1) % n]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

}  // namespace sfem
