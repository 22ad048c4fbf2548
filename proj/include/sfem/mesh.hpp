#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfem/geometry.hpp"

namespace sfem {

struct Node {
  std::size_t id = 0;
  double x = 0.0;
  double y = 0.0;

  Point2 point() const { return {x, y}; }
  friend bool operator==(const Node&, const Node&) = default;
};

/// Four node ids in counter-clockwise order. Local edge e joins local nodes e and (e+1)%4.
struct Quad4Element {
  std::array<std::size_t, 4> node_ids{};
  friend bool operator==(const Quad4Element&, const Quad4Element&) = default;
};

enum class BoundaryTag { Left, Right, Top, Bottom };

std::string to_string(BoundaryTag tag);
BoundaryTag parse_boundary_tag(const std::string& text);

struct BoundaryEdge {
  std::size_t element = 0;
  int local_edge = 0;
  BoundaryTag tag = BoundaryTag::Left;
  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct Mesh {
  std::vector<Node> nodes;
  std::vector<Quad4Element> elements;
  std::vector<BoundaryEdge> boundary_edges;

  Quad element_points(std::size_t e) const;
  /// Node ids lying on at least one boundary edge, ascending.
  std::vector<std::size_t> boundary_nodes() const;
  /// Node ids on edges carrying `tag`, ascending.
  std::vector<std::size_t> nodes_with_tag(BoundaryTag tag) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

/// Throws InvalidElement (with the element index) when the mesh breaks a structural invariant:
/// node ids out of range, repeated ids in an element, a non-simple or clockwise quad, or a
/// boundary edge referencing a missing element.
void validate(const Mesh& mesh);

/// Uniform nx-by-ny grid over [0, length] x [-height/2, height/2], row-major node numbering from
/// the lower-left corner.
Mesh generate_structured_mesh(int nx, int ny, double length, double height);

/// Number of elements along x divided by the domain length.
double mesh_index(int nx, double length);

struct DistortionSpec {
  double alpha_ir = 0.0;
  std::uint64_t seed = 0;
};

/// Moves every interior node by (2 r - 1) * alpha_ir * (dx, dy) with r uniform in [0, 1).
///
/// Draws come from std::mt19937_64 seeded with `spec.seed`; each draw maps the top 53 bits of one
/// engine output to [0, 1). Interior nodes are visited in ascending id order, x draw first, then y.
/// Boundary nodes never draw and never move.
///
/// Throws InvalidElement naming the first element that is no longer a simple CCW quadrilateral.
Mesh distort_mesh(const Mesh& mesh, const DistortionSpec& spec, double dx, double dy);

struct ElementGeometry {
  double area = 0.0;
  Point2 centroid;
  bool is_convex = false;
};

/// Shoelace area, area centroid and convexity. Throws DegenerateElement if area <= 0.
ElementGeometry element_geometry(const Quad& quad);

enum class SplitOrientation {
  /// Cut along the bimedian joining the midpoints of local edges 0-1 and 2-3.
  Edge12To34,
  /// Cut along the bimedian joining the midpoints of local edges 1-2 and 3-0.
  Edge23To41,
};

std::string to_string(SplitOrientation orientation);

struct SmoothingCell {
  std::vector<Point2> vertices;
  double area = 0.0;
  std::size_t parent_element = 0;
};

/// Splits a CCW quad into k in {1, 2, 4} smoothing cells using the edge midpoints and the bimedian
/// intersection. Throws UnsupportedSubdivision for other k and ZeroArea if a cell collapses.
std::vector<SmoothingCell> subdivide(const Quad& quad, int k, std::size_t parent_element = 0,
                                     SplitOrientation orientation = SplitOrientation::Edge12To34);

/// Plain-text mesh file: `nodes N elements E`, N lines `id x y`, E lines `id n1 n2 n3 n4`,
/// then one `edge elem local_edge tag` line per boundary edge.
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace sfem
