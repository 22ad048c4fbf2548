#include "sfem/benchmarks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "sfem/error.hpp"

namespace sfem {

Point2 exact_displacement(const TimoshenkoBeam& beam, Point2 p) {
  const double L = beam.length, D = beam.height, E = beam.youngs_modulus, nu = beam.poisson_ratio;
  const double P = beam.load, I = beam.inertia();
  const double x = p.x, y = p.y;
  const double ux = P * y / (6.0 * E * I) * ((6.0 * L - 3.0 * x) * x + (2.0 + nu) * (y * y - D * D / 4.0));
  const double uy =
      -P / (6.0 * E * I) * (3.0 * nu * y * y * (L - x) + (4.0 + 5.0 * nu) * D * D * x / 4.0 + (3.0 * L - x) * x * x);
  return {ux, uy};
}

Vector3d exact_stress(const TimoshenkoBeam& beam, Point2 p) {
  const double D = beam.height, P = beam.load, I = beam.inertia();
  return {P * (beam.length - p.x) * p.y / I, 0.0, -P / (2.0 * I) * (D * D / 4.0 - p.y * p.y)};
}

Vector3d exact_strain(const TimoshenkoBeam& beam, Point2 p) {
  return elasticity_matrix(beam.material()).ldlt().solve(exact_stress(beam, p));
}

Point2 end_traction(const TimoshenkoBeam& beam, Point2 p) {
  const Vector3d s = exact_stress(beam, {beam.length, p.y});
  return {s(0), s(2)};
}

double exact_strain_energy(const TimoshenkoBeam& beam, int nx, int ny) {
  const GaussRule rule = gauss_legendre(4);
  const Matrix3d d = elasticity_matrix(beam.material());
  const Eigen::LDLT<Matrix3d> dinv(d);
  const double hx = beam.length / nx, hy = beam.height / ny;
  double energy = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (std::size_t a = 0; a < rule.points.size(); ++a) {
        for (std::size_t b = 0; b < rule.points.size(); ++b) {
          const Point2 p{(i + 0.5 * (rule.points[a] + 1.0)) * hx,
                         -0.5 * beam.height + (j + 0.5 * (rule.points[b] + 1.0)) * hy};
          const Vector3d s = exact_stress(beam, p);
          const double w = rule.weights[a] * rule.weights[b] * 0.25 * hx * hy;
          energy += 0.5 * w * s.dot(dinv.solve(s));
        }
      }
    }
  }
  return energy * beam.thickness;
}

PatchTestResult run_patch_test(const StiffnessSettings& settings, const PatchTestConfig& config) {
  Mesh mesh = generate_structured_mesh(config.n, config.n, 1.0, 1.0);
  if (config.alpha_ir > 0.0)
    mesh = distort_mesh(mesh, {config.alpha_ir, config.seed}, 1.0 / config.n, 1.0 / config.n);

  const MaterialModel material{1.0, 0.3, 1.0};
  GlobalSystem sys = assemble(mesh, settings, material);
  const auto boundary = mesh.boundary_nodes();
  apply_dirichlet(sys, mesh, boundary, config.field);
  const Solution sol = solve(sys);

  std::vector<char> on_boundary(mesh.nodes.size(), 0);
  for (auto id : boundary) on_boundary[id] = 1;
  PatchTestResult out;
  for (const auto& node : mesh.nodes) {
    if (on_boundary[node.id]) continue;
    const Point2 exact = config.field(node.point());
    const double ex = sol.u(static_cast<Eigen::Index>(DofMap::ux(node.id))) - exact.x;
    const double ey = sol.u(static_cast<Eigen::Index>(DofMap::uy(node.id))) - exact.y;
    out.max_error = std::max({out.max_error, std::abs(ex), std::abs(ey)});
  }
  out.mesh = std::move(mesh);
  return out;
}

double run_patch_test(const StiffnessSettings& settings, bool distorted) {
  PatchTestConfig config;
  if (distorted) {
    config.n = 3;
    config.alpha_ir = 0.4;
  }
  return run_patch_test(settings, config).max_error;
}

double energy_norm_error(const std::vector<CellStrain>& strains, const TimoshenkoBeam& beam) {
  const Matrix3d d = elasticity_matrix(beam.material());
  // interior 3-point rule, exact for quadratics
  static constexpr std::array<std::array<double, 2>, 3> bary{{{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0},
                                                              {1.0 / 6.0, 2.0 / 3.0}}};
  double total = 0.0;
  for (const auto& cs : strains) {
    const auto& v = cs.geometry.vertices;
    const Point2 c = vertex_centroid(v);
    for (std::size_t s = 0; s < v.size(); ++s) {
      const Point2 a = v[s];
      const Point2 b = v[(s + 1) % v.size()];
      const double area = 0.5 * cross(a - c, b - c);
      for (const auto& [r, t] : bary) {
        const Point2 p = c + r * (a - c) + t * (b - c);
        const Vector3d e = cs.strain - exact_strain(beam, p);
        total += (area / 3.0) * e.dot(d * e);
      }
    }
  }
  return std::sqrt(total * beam.thickness);
}

BeamRun run_beam(const TimoshenkoBeam& beam, const StiffnessSettings& settings, const Mesh& mesh) {
  const MaterialModel material = beam.material();
  GlobalSystem sys = assemble(mesh, settings, material);
  sys.load = apply_tractions(mesh, BoundaryTag::Right, [&beam](Point2 p) { return end_traction(beam, p); }, settings,
                             beam.thickness);
  apply_dirichlet(sys, mesh, mesh.nodes_with_tag(BoundaryTag::Left),
                  [&beam](Point2 p) { return exact_displacement(beam, p); });

  BeamRun run;
  run.solution = solve(sys);
  run.solution.per_cell_strains = recover_strains(mesh, settings, run.solution.u);
  run.energy_norm_error = energy_norm_error(run.solution.per_cell_strains, beam);
  run.warnings = std::move(sys.warnings);
  run.mesh = mesh;
  return run;
}

std::pair<int, int> beam_divisions(const TimoshenkoBeam& beam, double mesh_index) {
  const double nx_real = mesh_index * beam.length;
  const int nx = static_cast<int>(std::lround(nx_real));
  if (nx < 1 || std::abs(nx_real - nx) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "mesh index must give a whole number of elements along the beam");
  const int ny = std::max(1, static_cast<int>(std::lround(nx * beam.height / beam.length)));
  return {nx, ny};
}

Mesh beam_mesh(const TimoshenkoBeam& beam, double mesh_index, double alpha_ir, std::uint64_t seed,
               int subcells_to_check) {
  const auto [nx, ny] = beam_divisions(beam, mesh_index);
  Mesh mesh = generate_structured_mesh(nx, ny, beam.length, beam.height);
  if (alpha_ir > 0.0) mesh = distort_mesh(mesh, {alpha_ir, seed}, beam.length / nx, beam.height / ny);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) subdivide(mesh.element_points(e), subcells_to_check, e);
  return mesh;
}

RateFit fit_rate(const std::vector<ConvergenceRecord>& records) {
  const auto n = static_cast<double>(records.size());
  if (records.size() < 2) throw Error(ErrorKind::InvalidArgument, "rate fit needs at least two records");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    const double x = std::log(1.0 / r.mesh_index);
    const double y = std::log(r.energy_norm_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double mx = sx / n, my = sy / n;
  const double cxx = sxx / n - mx * mx;
  if (!(cxx > 0.0)) throw Error(ErrorKind::InvalidArgument, "rate fit needs at least two distinct mesh indices");
  const double cxy = sxy / n - mx * my;
  RateFit fit;
  fit.slope = cxy / cxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (const auto& r : records) {
    const double x = std::log(1.0 / r.mesh_index);
    const double y = std::log(r.energy_norm_error);
    ss_res += std::pow(y - (fit.intercept + fit.slope * x), 2);
    ss_tot += std::pow(y - my, 2);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

ConvergenceStudy run_convergence_study(const TimoshenkoBeam& beam, const StiffnessSettings& settings,
                                       double alpha_ir, const std::vector<std::uint64_t>& seeds,
                                       const std::vector<double>& mesh_indices) {
  if (mesh_indices.empty()) throw Error(ErrorKind::InvalidArgument, "no mesh indices");
  if (!std::is_sorted(mesh_indices.begin(), mesh_indices.end()))
    throw Error(ErrorKind::InvalidArgument, "mesh indices must be ascending");

  const std::vector<std::uint64_t> used_seeds =
      alpha_ir > 0.0 ? seeds : std::vector<std::uint64_t>{0};
  if (used_seeds.empty()) throw Error(ErrorKind::InvalidArgument, "irregular meshes need at least one seed");

  ConvergenceStudy study;
  for (const auto seed : used_seeds) {
    for (const double m : mesh_indices) {
      std::uint64_t effective = seed;
      std::optional<Mesh> mesh;
      for (int attempt = 0; attempt <= 10 && !mesh; ++attempt) {
        effective = seed + static_cast<std::uint64_t>(attempt) * 1000003ULL;
        try {
          mesh = beam_mesh(beam, m, alpha_ir, effective, settings.subcells);
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::InvalidElement && err.kind() != ErrorKind::ZeroArea) throw;
          std::ostringstream msg;
          msg << "mesh index " << m << ", seed " << effective << ": " << err.what() << "; re-seeding";
          study.log.push_back(msg.str());
        }
      }
      if (!mesh) throw Error(ErrorKind::InvalidElement, "no valid distorted mesh after 10 re-seeds");

      const BeamRun run = run_beam(beam, settings, *mesh);
      ConvergenceRecord rec;
      rec.scheme = to_string(settings.scheme);
      rec.subcells = settings.subcells;
      rec.alpha_ir = alpha_ir;
      rec.seed = effective;
      rec.mesh_index = m;
      rec.dofs = 2 * mesh->nodes.size();
      rec.strain_energy = run.solution.strain_energy;
      rec.energy_norm_error = run.energy_norm_error;
      study.records.push_back(rec);
    }
  }
  std::stable_sort(study.records.begin(), study.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.seed, a.mesh_index) < std::tie(b.seed, b.mesh_index);
  });
  if (mesh_indices.size() >= 2) study.fit = fit_rate(study.records);
  return study;
}

std::vector<ConvergenceRecord> median_by_mesh_index(const std::vector<ConvergenceRecord>& records) {
  std::map<double, std::vector<ConvergenceRecord>> groups;
  for (const auto& r : records) groups[r.mesh_index].push_back(r);
  std::vector<ConvergenceRecord> out;
  for (auto& [m, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const auto& a, const auto& b) { return a.energy_norm_error < b.energy_norm_error; });
    out.push_back(group[(group.size() - 1) / 2]);
  }
  return out;
}

std::string format17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_header() { return "scheme,k,alpha_ir,seed,mesh_index,dofs,strain_energy,energy_norm_error"; }

std::string to_csv(const std::vector<ConvergenceRecord>& records) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : records)
    out << r.scheme << ',' << r.subcells << ',' << format17(r.alpha_ir) << ',' << r.seed << ','
        << format17(r.mesh_index) << ',' << r.dofs << ',' << format17(r.strain_energy) << ','
        << format17(r.energy_norm_error) << '\n';
  return out.str();
}

}  // namespace sfem
