#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <string>
#include <vector>

#include "sfem/mesh.hpp"
#include "sfem/smoothing.hpp"

namespace sfem {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using Vector3d = Eigen::Vector3d;

/// Node n owns DOFs 2n (ux) and 2n+1 (uy).
struct DofMap {
  std::size_t node_count = 0;

  std::size_t total_dofs() const { return 2 * node_count; }
  static std::size_t ux(std::size_t node) { return 2 * node; }
  static std::size_t uy(std::size_t node) { return 2 * node + 1; }
};

struct FixedDof {
  std::size_t dof = 0;
  double value = 0.0;
};

struct GlobalSystem {
  DofMap dofs;
  SparseMatrix stiffness;
  Vector load;
  std::vector<FixedDof> fixed;
  std::vector<std::string> warnings;
};

/// Scatters every element stiffness into the global matrix. Element errors are rethrown with the
/// element index attached. The load vector is zero-initialised.
GlobalSystem assemble(const Mesh& mesh, const StiffnessSettings& settings, const MaterialModel& material);

using VectorField = std::function<Point2(Point2)>;

/// Consistent nodal forces for a traction field on every boundary edge carrying `tag`, with 2-point
/// Gauss per edge and the element's own shape functions. Throws UnknownTag if no edge carries it.
Vector apply_tractions(const Mesh& mesh, BoundaryTag tag, const VectorField& traction,
                       const StiffnessSettings& settings, double thickness = 1.0);

/// Prescribes both displacement components of each listed node from `field`. Later entries for the
/// same DOF replace earlier ones.
void apply_dirichlet(GlobalSystem& system, const Mesh& mesh, const std::vector<std::size_t>& nodes,
                     const VectorField& field);

struct CellStrain {
  std::size_t element = 0;
  std::size_t cell = 0;
  SmoothingCell geometry;
  Vector3d strain = Vector3d::Zero();
};

struct Solution {
  Vector u;
  double strain_energy = 0.0;
  /// K u - f at the constrained DOFs, in the order of GlobalSystem::fixed.
  std::vector<double> reactions;
  /// |K_ff u_f - f_f| / |f_f| on the reduced system (2-norms).
  double relative_residual = 0.0;
  /// |r|_inf / (|K_ff|_inf |u_f|_inf + |f_f|_inf), the quantity the solve contract bounds.
  double backward_error = 0.0;
  /// Filled by recover_strains; solve() leaves it empty.
  std::vector<CellStrain> per_cell_strains;
};

/// Eliminates the prescribed DOFs, factorises the reduced matrix with a sparse LDL^T and applies
/// up to three steps of iterative refinement. Throws AllDofsFixed, or SingularSystem when a pivot
/// is negligible or the normwise backward error exceeds 1e-10. Well-conditioned systems also meet
/// |K u - f| / |f| < 1e-10; on badly distorted meshes the condition number can put that ratio out
/// of reach of double precision, so it is reported rather than enforced.
Solution solve(const GlobalSystem& system);

/// Cell-wise smoothed strains of a solved displacement field.
std::vector<CellStrain> recover_strains(const Mesh& mesh, const StiffnessSettings& settings, const Vector& u);

}  // namespace sfem
