#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "vemsf/element.hpp"
#include "vemsf/fields.hpp"
#include "vemsf/mesh.hpp"

namespace vemsf {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Global numbering of scalar sites: mesh vertices first, then the k-1 nodes
/// of each global edge in edge order, ordered from the edge's lower to higher
/// vertex index. Global DOF of (site, component) is 2*site + component.
struct DofMap {
  int k = 1;
  int num_sites = 0;
  std::vector<Point2> site_positions;
  /// Per cell, local site index -> global site index (local order as in DofLayout).
  std::vector<std::vector<int>> cell_sites;
  /// Boundary group -> sorted global sites on that group (vertices included).
  std::map<std::string, std::vector<int>> group_sites;

  int num_dofs() const noexcept { return 2 * num_sites; }
  /// Local DOF list (component-major, as in DofLayout) -> global DOFs.
  std::vector<int> cell_dofs(std::size_t cell) const;
};

/// Throws UnsupportedElementError when some cell has k >= eta_E.
DofMap build_dof_map(const PolygonalMesh& mesh, int k);

struct BoundaryValueProblem {
  const PolygonalMesh* mesh = nullptr;
  int k = 2;
  MaterialMatrix material;
  VectorField body_force;
  ForceOptions force_options;
  EllPolicy ell_policy;
  /// Exactly one entry per boundary group of the mesh.
  std::map<std::string, BoundaryCondition> conditions;
};

struct AssembledSystem {
  SparseMatrix A;
  Vector b;
  std::vector<ElementGeometry> geometry;
  std::vector<ElementMatrices> elements;
};

/// Builds every element (in parallel) and merges the triplets. Throws
/// ConfigurationError when boundary groups and conditions do not match; the
/// first failing element's error (lowest cell index) is rethrown otherwise.
AssembledSystem assemble(const BoundaryValueProblem& bvp, const DofMap& dofmap);

struct ReducedSystem {
  SparseMatrix A;
  Vector b;
  std::vector<int> free_dofs;
  /// Full-length vector holding the prescribed values (zeros elsewhere).
  Vector prescribed;
  std::vector<bool> constrained;
};

/// Nodal interpolation of the Dirichlet data followed by symmetric elimination.
/// Sites shared by several constrained groups take the first group's value in
/// name order. Throws EvaluationError for non-finite data.
ReducedSystem apply_dirichlet(const AssembledSystem& system, const DofMap& dofmap,
                              const std::map<std::string, BoundaryCondition>& conditions);

struct SolveInfo {
  double relative_residual = 0.0;
};

/// Sparse LDL^T solve. Throws SolverError when the matrix is not numerically
/// SPD or the relative residual exceeds 1e-10.
Vector solve(const SparseMatrix& A, const Vector& b, SolveInfo* info = nullptr);

/// Solves the reduced system and scatters the result into a full DOF vector.
Vector solve_reduced(const ReducedSystem& reduced, SolveInfo* info = nullptr);

struct ErrorNorms {
  double linf = 0.0;
  double l2 = 0.0;
  double energy = 0.0;
};

/// L-infinity over all DOF sites, L2 of u - Pi^S u_h and energy norm of
/// eps(u) - N^p Pi u_h. `extra_degree` raises the quadrature for
/// non-polynomial exact fields.
ErrorNorms error_norms(const Vector& solution, const AssembledSystem& system, const DofMap& dofmap,
                       const MaterialMatrix& material, const AnalyticField& exact, int extra_degree = 2);

/// Per-pair slopes -log(e2/e1) / log(sqrt(N2)/sqrt(N1)); NaN where undefined.
std::vector<double> convergence_rate(const std::vector<double>& errors, const std::vector<double>& dof_counts);

/// Nodal interpolant of a field on all DOF sites.
Vector interpolate(const DofMap& dofmap, const VectorField& u);

/// Complete pipeline: DOF map, assembly, Dirichlet elimination and solve.
struct Solution {
  DofMap dofmap;
  AssembledSystem system;
  Vector u;
  SolveInfo info;
};
Solution solve_bvp(const BoundaryValueProblem& bvp);

}  // namespace vemsf
