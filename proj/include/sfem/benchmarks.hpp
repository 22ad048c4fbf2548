#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfem/mesh.hpp"
#include "sfem/smoothing.hpp"
#include "sfem/solver.hpp"

namespace sfem {

/// Plane-stress cantilever of length L and depth D, clamped at x = 0 and loaded by a parabolic
/// shear of resultant P at x = L. The centreline is y = 0.
struct TimoshenkoBeam {
  double length = 8.0;
  double height = 4.0;
  double thickness = 1.0;
  double youngs_modulus = 3.0e7;
  double poisson_ratio = 0.3;
  double load = 250.0;

  double inertia() const { return height * height * height * thickness / 12.0; }
  MaterialModel material() const { return {youngs_modulus, poisson_ratio, thickness}; }
};

/// Reference value of the beam strain energy for the default constants.
inline constexpr double kBeamExactStrainEnergy = 0.0398333;

Point2 exact_displacement(const TimoshenkoBeam& beam, Point2 p);
/// (sigma_xx, sigma_yy, tau_xy)
Vector3d exact_stress(const TimoshenkoBeam& beam, Point2 p);
/// (eps_xx, eps_yy, gamma_xy) = D^-1 sigma
Vector3d exact_strain(const TimoshenkoBeam& beam, Point2 p);
/// Traction on the free end x = L (outward normal +x).
Point2 end_traction(const TimoshenkoBeam& beam, Point2 p);

/// 1/2 * integral of sigma : eps over the beam, with 4x4 Gauss points on an nx-by-ny grid.
double exact_strain_energy(const TimoshenkoBeam& beam, int nx = 32, int ny = 16);

/// u = (a0 + a1 x + a2 y, b0 + b1 x + b2 y)
struct LinearField {
  std::array<double, 3> a{1.0e-3, 2.0e-3, -1.5e-3};
  std::array<double, 3> b{-0.5e-3, 1.0e-3, 3.0e-3};

  Point2 operator()(Point2 p) const {
    return {a[0] + a[1] * p.x + a[2] * p.y, b[0] + b[1] * p.x + b[2] * p.y};
  }
};

struct PatchTestConfig {
  int n = 2;
  double alpha_ir = 0.0;
  std::uint64_t seed = 7;
  LinearField field;
};

struct PatchTestResult {
  double max_error = 0.0;
  Mesh mesh;
};

/// Imposes `field` on every boundary node of an n-by-n patch over the unit square and measures the
/// largest interior nodal deviation from it. No body force, no tractions.
PatchTestResult run_patch_test(const StiffnessSettings& settings, const PatchTestConfig& config);

/// Defaults: regular 2x2, or 3x3 with alpha_ir = 0.4.
double run_patch_test(const StiffnessSettings& settings, bool distorted);

/// sqrt( sum over cells of integral (eps_h - eps_exact)^T D (eps_h - eps_exact) ), each cell fanned
/// into triangles from its vertex average with the 3-point interior rule.
double energy_norm_error(const std::vector<CellStrain>& strains, const TimoshenkoBeam& beam);

struct BeamRun {
  Mesh mesh;
  Solution solution;
  double energy_norm_error = 0.0;
  std::vector<std::string> warnings;
};

/// Structured nx-by-ny beam mesh, optionally distorted, with the exact displacement prescribed on
/// the clamped end and the parabolic shear applied on the free end.
BeamRun run_beam(const TimoshenkoBeam& beam, const StiffnessSettings& settings, const Mesh& mesh);

Mesh beam_mesh(const TimoshenkoBeam& beam, double mesh_index, double alpha_ir = 0.0, std::uint64_t seed = 0,
               int subcells_to_check = 4);

struct ConvergenceRecord {
  std::string scheme;
  int subcells = 0;
  double alpha_ir = 0.0;
  std::uint64_t seed = 0;
  double mesh_index = 0.0;
  std::size_t dofs = 0;
  double strain_energy = 0.0;
  double energy_norm_error = 0.0;
};

/// Least squares of log(error) on log(h), h = 1 / mesh_index. Needs two distinct mesh indices.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

RateFit fit_rate(const std::vector<ConvergenceRecord>& records);

struct ConvergenceStudy {
  std::vector<ConvergenceRecord> records;
  RateFit fit;
  std::vector<std::string> log;
};

/// Elements per unit length -> (nx, ny) with ny = nx * D / L.
std::pair<int, int> beam_divisions(const TimoshenkoBeam& beam, double mesh_index);

/// One beam solve per (seed, mesh index). With alpha_ir = 0 the seeds are ignored and one record is
/// produced per mesh index with seed 0. A distorted mesh that is invalid for the requested
/// subdivision is regenerated with seed + attempt * 1000003, up to 10 times, and the record
/// carries the seed actually used. Records are sorted by (seed, mesh_index). The fit is left
/// zeroed when only one mesh index is given.
ConvergenceStudy run_convergence_study(const TimoshenkoBeam& beam, const StiffnessSettings& settings,
                                       double alpha_ir, const std::vector<std::uint64_t>& seeds,
                                       const std::vector<double>& mesh_indices);

/// Record with the median energy-norm error across seeds, one per mesh index.
std::vector<ConvergenceRecord> median_by_mesh_index(const std::vector<ConvergenceRecord>& records);

/// CSV header plus one line per record, doubles with 17 significant digits.
std::string to_csv(const std::vector<ConvergenceRecord>& records);
std::string csv_header();
std::string format17(double value);

}  // namespace sfem
