#pragma once

#include <array>
#include <cmath>
#include <span>

namespace sfem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

using Quad = std::array<Point2, 4>;

constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Signed shoelace area, positive for counter-clockwise vertex order.
double signed_area(std::span<const Point2> polygon);

/// Area centroid of a simple polygon with non-zero area.
Point2 area_centroid(std::span<const Point2> polygon);

/// Arithmetic mean of the vertices.
Point2 vertex_centroid(std::span<const Point2> polygon);

/// Largest vertex-to-vertex distance.
double diameter(std::span<const Point2> polygon);

/// True when no two non-adjacent edges intersect (touching counts as an intersection).
bool is_simple(std::span<const Point2> polygon);

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

}  // namespace sfem
