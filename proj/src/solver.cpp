#include "sfem/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cstdio>
#include <map>

#include "sfem/error.hpp"

namespace sfem {

namespace {

std::array<std::size_t, 8> element_dofs(const Quad4Element& el) {
  std::array<std::size_t, 8> dofs{};
  for (int i = 0; i < 4; ++i) {
    dofs[2 * i] = DofMap::ux(el.node_ids[i]);
    dofs[2 * i + 1] = DofMap::uy(el.node_ids[i]);
  }
  return dofs;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

GlobalSystem assemble(const Mesh& mesh, const StiffnessSettings& settings, const MaterialModel& material) {
  GlobalSystem sys;
  sys.dofs.node_count = mesh.nodes.size();
  const auto n = static_cast<Eigen::Index>(sys.dofs.total_dofs());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.elements.size() * 64);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    ElementStiffness ke;
    try {
      ke = element_stiffness(mesh.element_points(e), settings, material, e);
    } catch (const Error& err) {
      throw Error(err.kind(), "element " + std::to_string(e) + " (" + to_string(settings.scheme) + ", k=" +
                                  std::to_string(settings.subcells) + "): " + err.what(), long(e));
    }
    for (auto& w : ke.warnings) sys.warnings.push_back(std::move(w));
    const auto dofs = element_dofs(mesh.elements[e]);
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        triplets.emplace_back(static_cast<Eigen::Index>(dofs[a]), static_cast<Eigen::Index>(dofs[b]), ke.k(a, b));
  }
  sys.stiffness.resize(n, n);
  sys.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  sys.load = Vector::Zero(n);
  return sys;
}

Vector apply_tractions(const Mesh& mesh, BoundaryTag tag, const VectorField& traction,
                       const StiffnessSettings& settings, double thickness) {
  Vector f = Vector::Zero(static_cast<Eigen::Index>(2 * mesh.nodes.size()));
  const GaussRule rule = gauss_legendre(2);
  bool found = false;
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != tag) continue;
    found = true;
    const Quad quad = mesh.element_points(be.element);
    const ElementApproximation approx(settings.scheme, quad, settings.subcells, settings.orientation);
    const Point2 p0 = quad[be.local_edge];
    const Point2 p1 = quad[(be.local_edge + 1) % 4];
    const double half_length = 0.5 * norm(p1 - p0);
    const auto& ids = mesh.elements[be.element].node_ids;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point2 p = p0 + (0.5 * (rule.points[q] + 1.0)) * (p1 - p0);
      const ShapeValues sv = approx.values(p);
      const Point2 t = traction(p);
      const double w = rule.weights[q] * half_length * thickness;
      for (int i = 0; i < 4; ++i) {
        f(static_cast<Eigen::Index>(DofMap::ux(ids[i]))) += w * sv[i] * t.x;
        f(static_cast<Eigen::Index>(DofMap::uy(ids[i]))) += w * sv[i] * t.y;
      }
    }
  }
  if (!found) throw Error(ErrorKind::UnknownTag, "no boundary edge tagged '" + to_string(tag) + "'");
  return f;
}

void apply_dirichlet(GlobalSystem& system, const Mesh& mesh, const std::vector<std::size_t>& nodes,
                     const VectorField& field) {
  std::map<std::size_t, double> prescribed;
  for (const auto& fd : system.fixed) prescribed[fd.dof] = fd.value;
  for (auto id : nodes) {
    const Point2 v = field(mesh.nodes.at(id).point());
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw Error(ErrorKind::InvalidArgument, "prescribed displacement at node " + std::to_string(id) + " is not finite");
    prescribed[DofMap::ux(id)] = v.x;
    prescribed[DofMap::uy(id)] = v.y;
  }
  system.fixed.clear();
  for (const auto& [dof, value] : prescribed) system.fixed.push_back({dof, value});
}

Solution solve(const GlobalSystem& system) {
  const auto n = static_cast<Eigen::Index>(system.dofs.total_dofs());
  std::vector<Eigen::Index> reduced(static_cast<std::size_t>(n), -1);
  Vector u = Vector::Zero(n);
  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  for (const auto& fd : system.fixed) {
    fixed[fd.dof] = 1;
    u(static_cast<Eigen::Index>(fd.dof)) = fd.value;
  }
  Eigen::Index n_free = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!fixed[static_cast<std::size_t>(i)]) reduced[static_cast<std::size_t>(i)] = n_free++;
  if (n_free == 0) throw Error(ErrorKind::AllDofsFixed, "every degree of freedom is prescribed");

  // K_ff u_f = f_f - K_fc u_c
  Vector rhs = Vector::Zero(n_free);
  for (Eigen::Index i = 0; i < n; ++i)
    if (reduced[static_cast<std::size_t>(i)] >= 0) rhs(reduced[static_cast<std::size_t>(i)]) = system.load(i);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(system.stiffness.nonZeros()));
  for (Eigen::Index col = 0; col < system.stiffness.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(system.stiffness, col); it; ++it) {
      const auto r = reduced[static_cast<std::size_t>(it.row())];
      const auto c = reduced[static_cast<std::size_t>(it.col())];
      if (r < 0) continue;
      if (c >= 0)
        triplets.emplace_back(r, c, it.value());
      else
        rhs(r) -= it.value() * u(it.col());
    }
  }
  SparseMatrix kff(n_free, n_free);
  kff.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(kff);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SingularSystem, "factorisation failed");
  const Vector pivots = ldlt.vectorD();
  const double top = pivots.cwiseAbs().maxCoeff();
  Eigen::Index tiny = 0;
  for (Eigen::Index i = 0; i < pivots.size(); ++i)
    if (!(pivots(i) > 1e-13 * top)) ++tiny;
  if (tiny > 0)
    throw Error(ErrorKind::SingularSystem,
                "reduced stiffness has " + std::to_string(tiny) + " non-positive or negligible pivots out of " +
                    std::to_string(n_free) + " (missing constraints or spurious zero-energy modes, e.g. k=1 cells)");

  Vector uf = ldlt.solve(rhs);
  const double rhs_norm = rhs.norm();
  // max absolute row sum
  double k_norm = 0.0;
  {
    Vector row_sums = Vector::Zero(n_free);
    for (Eigen::Index col = 0; col < kff.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(kff, col); it; ++it) row_sums(it.row()) += std::abs(it.value());
    k_norm = row_sums.maxCoeff();
  }
  const auto backward_error = [&](const Vector& r) {
    const double scale = k_norm * uf.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
    return scale > 0.0 ? r.lpNorm<Eigen::Infinity>() / scale : 0.0;
  };
  Vector r = rhs - kff * uf;
  for (int step = 0; step < 3 && backward_error(r) > 1e-15; ++step) {
    uf += ldlt.solve(r);
    r = rhs - kff * uf;
  }

  Solution sol;
  sol.relative_residual = rhs_norm > 0.0 ? r.norm() / rhs_norm : r.norm();
  sol.backward_error = backward_error(r);
  for (Eigen::Index i = 0; i < n; ++i)
    if (reduced[static_cast<std::size_t>(i)] >= 0) u(i) = uf(reduced[static_cast<std::size_t>(i)]);
  if (!(sol.backward_error < 1e-10))
    throw Error(ErrorKind::SingularSystem,
                "normwise backward error " + format_sci(sol.backward_error) + " exceeds 1e-10");

  const Vector ku = system.stiffness * u;
  sol.strain_energy = 0.5 * u.dot(ku);
  for (const auto& fd : system.fixed) {
    const auto d = static_cast<Eigen::Index>(fd.dof);
    sol.reactions.push_back(ku(d) - system.load(d));
  }
  sol.u = std::move(u);
  return sol;
}

std::vector<CellStrain> recover_strains(const Mesh& mesh, const StiffnessSettings& settings, const Vector& u) {
  std::vector<CellStrain> out;
  const int order = settings.effective_quadrature();
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Quad quad = mesh.element_points(e);
    const ElementApproximation approx(settings.scheme, quad, settings.subcells, settings.orientation);
    const auto dofs = element_dofs(mesh.elements[e]);
    Vector8d ue;
    for (int a = 0; a < 8; ++a) ue(a) = u(static_cast<Eigen::Index>(dofs[a]));
    auto cells = subdivide(quad, settings.subcells, e, settings.orientation);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto b = smoothed_b(cells[c], approx, order);
      out.push_back({e, c, std::move(cells[c]), b.entries * ue});
    }
  }
  return out;
}

}  // namespace sfem
