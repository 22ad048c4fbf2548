#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "sfem/error.hpp"
#include "sfem/mesh.hpp"

namespace sfem {

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
T expect(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) throw Error(ErrorKind::ParseError, std::string("expected ") + what);
  return value;
}

void expect_word(std::istream& in, const std::string& word) {
  const auto got = expect<std::string>(in, word.c_str());
  if (got != word) throw Error(ErrorKind::ParseError, "expected '" + word + "', got '" + got + "'");
}

}  // namespace

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "nodes " << mesh.nodes.size() << " elements " << mesh.elements.size() << '\n';
  for (const auto& n : mesh.nodes) out << n.id << ' ' << format17(n.x) << ' ' << format17(n.y) << '\n';
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& ids = mesh.elements[e].node_ids;
    out << e << ' ' << ids[0] << ' ' << ids[1] << ' ' << ids[2] << ' ' << ids[3] << '\n';
  }
  for (const auto& be : mesh.boundary_edges)
    out << "edge " << be.element << ' ' << be.local_edge << ' ' << to_string(be.tag) << '\n';
}

Mesh read_mesh(std::istream& in) {
  Mesh mesh;
  expect_word(in, "nodes");
  const auto n_nodes = expect<std::size_t>(in, "node count");
  expect_word(in, "elements");
  const auto n_elems = expect<std::size_t>(in, "element count");

  mesh.nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    Node n;
    n.id = expect<std::size_t>(in, "node id");
    n.x = expect<double>(in, "x");
    n.y = expect<double>(in, "y");
    if (n.id != i) throw Error(ErrorKind::ParseError, "node ids must be 0..N-1 in order");
    mesh.nodes.push_back(n);
  }
  mesh.elements.reserve(n_elems);
  for (std::size_t e = 0; e < n_elems; ++e) {
    if (expect<std::size_t>(in, "element id") != e)
      throw Error(ErrorKind::ParseError, "element ids must be 0..E-1 in order");
    Quad4Element el;
    for (auto& id : el.node_ids) id = expect<std::size_t>(in, "element node");
    mesh.elements.push_back(el);
  }
  std::string word;
  while (in >> word) {
    if (word != "edge") throw Error(ErrorKind::ParseError, "expected 'edge', got '" + word + "'");
    BoundaryEdge be;
    be.element = expect<std::size_t>(in, "edge element");
    be.local_edge = expect<int>(in, "local edge");
    be.tag = parse_boundary_tag(expect<std::string>(in, "tag"));
    mesh.boundary_edges.push_back(be);
  }
  validate(mesh);
  return mesh;
}

}  // namespace sfem
