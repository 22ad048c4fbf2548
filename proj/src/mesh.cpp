#include "sfem/mesh.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "sfem/error.hpp"

namespace sfem {

std::string to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Left: return "left";
    case BoundaryTag::Right: return "right";
    case BoundaryTag::Top: return "top";
    case BoundaryTag::Bottom: return "bottom";
  }
  return "unknown";
}

BoundaryTag parse_boundary_tag(const std::string& text) {
  if (text == "left") return BoundaryTag::Left;
  if (text == "right") return BoundaryTag::Right;
  if (text == "top") return BoundaryTag::Top;
  if (text == "bottom") return BoundaryTag::Bottom;
  throw Error(ErrorKind::UnknownTag, "unknown boundary tag '" + text + "'");
}

std::string to_string(SplitOrientation orientation) {
  return orientation == SplitOrientation::Edge12To34 ? "edge12-edge34" : "edge23-edge41";
}

Quad Mesh::element_points(std::size_t e) const {
  const auto& ids = elements.at(e).node_ids;
  return {nodes[ids[0]].point(), nodes[ids[1]].point(), nodes[ids[2]].point(), nodes[ids[3]].point()};
}

std::vector<std::size_t> Mesh::boundary_nodes() const {
  std::set<std::size_t> ids;
  for (const auto& be : boundary_edges) {
    const auto& el = elements.at(be.element);
    ids.insert(el.node_ids[be.local_edge]);
    ids.insert(el.node_ids[(be.local_edge + 1) % 4]);
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::size_t> Mesh::nodes_with_tag(BoundaryTag tag) const {
  std::set<std::size_t> ids;
  for (const auto& be : boundary_edges) {
    if (be.tag != tag) continue;
    const auto& el = elements.at(be.element);
    ids.insert(el.node_ids[be.local_edge]);
    ids.insert(el.node_ids[(be.local_edge + 1) % 4]);
  }
  return {ids.begin(), ids.end()};
}

namespace {

void validate_quad(const Quad& q, std::size_t e) {
  if (!is_simple(q))
    throw Error(ErrorKind::InvalidElement, "element " + std::to_string(e) + " is self-intersecting", long(e));
  if (signed_area(q) <= 0.0)
    throw Error(ErrorKind::InvalidElement, "element " + std::to_string(e) + " is not counter-clockwise", long(e));
}

}  // namespace

void validate(const Mesh& mesh) {
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const auto& n = mesh.nodes[i];
    if (n.id != i || !std::isfinite(n.x) || !std::isfinite(n.y))
      throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(i) + " has a bad id or coordinate");
  }
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& ids = mesh.elements[e].node_ids;
    for (int a = 0; a < 4; ++a) {
      if (ids[a] >= mesh.nodes.size())
        throw Error(ErrorKind::InvalidElement, "element " + std::to_string(e) + " references a missing node",
                    long(e));
      for (int b = a + 1; b < 4; ++b)
        if (ids[a] == ids[b])
          throw Error(ErrorKind::InvalidElement, "element " + std::to_string(e) + " repeats a node", long(e));
    }
    validate_quad(mesh.element_points(e), e);
  }
  std::set<std::pair<std::size_t, int>> seen;
  for (const auto& be : mesh.boundary_edges) {
    if (be.element >= mesh.elements.size() || be.local_edge < 0 || be.local_edge > 3)
      throw Error(ErrorKind::InvalidArgument, "boundary edge references a missing element");
    if (!seen.insert({be.element, be.local_edge}).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate boundary edge on element " + std::to_string(be.element));
  }
}

Mesh generate_structured_mesh(int nx, int ny, double length, double height) {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "nx and ny must be at least 1");
  if (!(length > 0.0) || !(height > 0.0)) throw Error(ErrorKind::InvalidArgument, "length and height must be positive");

  Mesh mesh;
  const double dx = length / nx;
  const double dy = height / ny;
  const auto stride = static_cast<std::size_t>(nx + 1);
  mesh.nodes.reserve(stride * static_cast<std::size_t>(ny + 1));
  for (int j = 0; j <= ny; ++j) {
    // pin the last row/column so the domain edges are exact
    const double y = (j == ny) ? 0.5 * height : -0.5 * height + j * dy;
    for (int i = 0; i <= nx; ++i) {
      const double x = (i == nx) ? length : i * dx;
      mesh.nodes.push_back({mesh.nodes.size(), x, y});
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t n0 = static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i);
      const std::size_t e = mesh.elements.size();
      mesh.elements.push_back({{n0, n0 + 1, n0 + 1 + stride, n0 + stride}});
      if (j == 0) mesh.boundary_edges.push_back({e, 0, BoundaryTag::Bottom});
      if (i == nx - 1) mesh.boundary_edges.push_back({e, 1, BoundaryTag::Right});
      if (j == ny - 1) mesh.boundary_edges.push_back({e, 2, BoundaryTag::Top});
      if (i == 0) mesh.boundary_edges.push_back({e, 3, BoundaryTag::Left});
    }
  }
  return mesh;
}

double mesh_index(int nx, double length) { return static_cast<double>(nx) / length; }

Mesh distort_mesh(const Mesh& mesh, const DistortionSpec& spec, double dx, double dy) {
  if (!(spec.alpha_ir >= 0.0 && spec.alpha_ir <= 0.5))
    throw Error(ErrorKind::InvalidArgument, "alpha_ir must lie in [0, 0.5]");
  if (!(dx > 0.0) || !(dy > 0.0)) throw Error(ErrorKind::InvalidArgument, "element sizes must be positive");

  Mesh out = mesh;
  if (spec.alpha_ir == 0.0) return out;

  std::vector<char> on_boundary(mesh.nodes.size(), 0);
  for (auto id : mesh.boundary_nodes()) on_boundary[id] = 1;

  std::mt19937_64 engine(spec.seed);
  const auto draw = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  for (auto& node : out.nodes) {
    if (on_boundary[node.id]) continue;
    const double rx = draw();
    const double ry = draw();
    node.x += (2.0 * rx - 1.0) * spec.alpha_ir * dx;
    node.y += (2.0 * ry - 1.0) * spec.alpha_ir * dy;
  }
  for (std::size_t e = 0; e < out.elements.size(); ++e) validate_quad(out.element_points(e), e);
  return out;
}

ElementGeometry element_geometry(const Quad& quad) {
  const double area = signed_area(quad);
  if (!(area > 0.0)) throw Error(ErrorKind::DegenerateElement, "quadrilateral has non-positive area");
  int positive = 0, negative = 0;
  for (int i = 0; i < 4; ++i) {
    const double c = cross(quad[(i + 1) % 4] - quad[i], quad[(i + 2) % 4] - quad[(i + 1) % 4]);
    if (c > 0.0) ++positive;
    if (c < 0.0) ++negative;
  }
  return {area, area_centroid(quad), positive == 4 || negative == 4};
}

std::vector<SmoothingCell> subdivide(const Quad& quad, int k, std::size_t parent_element,
                                     SplitOrientation orientation) {
  const Point2 m01 = midpoint(quad[0], quad[1]);
  const Point2 m12 = midpoint(quad[1], quad[2]);
  const Point2 m23 = midpoint(quad[2], quad[3]);
  const Point2 m30 = midpoint(quad[3], quad[0]);
  // both bimedians bisect each other at the vertex average
  const Point2 c = vertex_centroid(quad);

  std::vector<std::vector<Point2>> polys;
  switch (k) {
    case 1:
      polys.push_back({quad.begin(), quad.end()});
      break;
    case 2:
      if (orientation == SplitOrientation::Edge12To34) {
        polys.push_back({quad[0], m01, m23, quad[3]});
        polys.push_back({m01, quad[1], quad[2], m23});
      } else {
        polys.push_back({quad[0], quad[1], m12, m30});
        polys.push_back({m30, m12, quad[2], quad[3]});
      }
      break;
    case 4:
      polys.push_back({quad[0], m01, c, m30});
      polys.push_back({m01, quad[1], m12, c});
      polys.push_back({c, m12, quad[2], m23});
      polys.push_back({m30, c, m23, quad[3]});
      break;
    default:
      throw Error(ErrorKind::UnsupportedSubdivision, "k must be 1, 2 or 4 (got " + std::to_string(k) + ")",
                  long(parent_element));
  }

  std::vector<SmoothingCell> cells;
  cells.reserve(polys.size());
  for (auto& p : polys) {
    const double a = signed_area(p);
    if (!(a > 0.0))
      throw Error(ErrorKind::ZeroArea, "smoothing cell of element " + std::to_string(parent_element) +
                                           " has non-positive area", long(parent_element));
    cells.push_back({std::move(p), a, parent_element});
  }
  return cells;
}

}  // namespace sfem
