#pragma once

#include <vector>

#include "vemsf/mesh.hpp"
#include "vemsf/polyspace.hpp"
#include "vemsf/quadrature.hpp"

namespace vemsf {

/// Boundary DOF layout of one element. Scalar sites are the N_E vertices
/// followed by k-1 Gauss-Lobatto nodes per edge (edges in ring order, nodes in
/// the edge's counterclockwise direction). DOF j < S is the x-component at
/// site j; DOF S + j the y-component.
struct DofLayout {
  int cell = -1;
  int k = 1;
  std::vector<Point2> sites;
  /// Per edge, the k+1 site indices from its start vertex to its end vertex.
  std::vector<std::vector<int>> edge_sites;
  /// Edge parameters of the k+1 nodes, shared by every edge.
  std::vector<double> edge_params;

  int num_sites() const noexcept { return static_cast<int>(sites.size()); }
  int num_dofs() const noexcept { return 2 * num_sites(); }
};

/// Number of distinct boundary lines, below which k is unsupported.
int boundary_line_count(const ElementGeometry& geom);

/// Throws UnsupportedElementError (tagged with `cell`) when k >= eta_E and
/// InvalidParameterError unless 1 <= k <= 3.
DofLayout build_dof_layout(const ElementGeometry& geom, int k, int cell = -1);

/// D(j, alpha) = delta_j(m_alpha). Throws RankDeficiencyError if the
/// numerical rank is below N_k.
Matrix dof_matrix_D(const DofLayout& layout, const VectorMonomialBasis& basis);

/// 1-norm condition estimate of an SPD matrix; +inf when the
/// Cholesky factorization fails.
double spd_condition_estimate(const Matrix& spd);

inline constexpr double kMaxCondition = 1e14;

struct SerendipityProjector {
  Matrix D;
  Matrix G_hat;
  Matrix B_hat;
  Matrix Pi_S;
  double condition = 0.0;
};

/// G_hat = D^T D, B_hat = D^T, Pi_S = G_hat^{-1} B_hat.
SerendipityProjector serendipity_projector(const DofLayout& layout, const VectorMonomialBasis& basis);

struct DisplacementProjector {
  Matrix G_tilde;
  Matrix B_tilde;
  Matrix Pi0_tilde;
  double condition = 0.0;
  double deviation_from_Pi_S = 0.0;  // max abs entry of Pi0_tilde - Pi_S
};

/// L2 displacement projector; throws ConditioningError when G_tilde is
/// ill-conditioned or the solve departs from Pi_S.
DisplacementProjector l2_displacement_projector(const ElementGeometry& geom, const VectorMonomialBasis& basis,
                                                const Matrix& Pi_S);

struct StrainProjector {
  Matrix G;
  Matrix B;
  Matrix Pi;
  double condition = 0.0;
};

StrainProjector l2_strain_projector(const ElementGeometry& geom, const DofLayout& layout,
                                    const VectorMonomialBasis& vbasis, const MatrixMonomialBasis& mbasis,
                                    const Matrix& Pi_S);

struct Conditioning {
  double G_hat = 0.0;
  double G_tilde = 0.0;
  double G = 0.0;
};

struct ProjectorSet {
  int k = 1;
  int ell = 0;
  ScaledFrame frame;
  Matrix D;
  Matrix Pi_S;
  Matrix Pi0_tilde;
  Matrix Pi;
  Matrix G;
  Conditioning conditioning;
};

ProjectorSet build_projectors(const ElementGeometry& geom, const DofLayout& layout, int ell);

/// Lagrange basis values at parameter t for the given nodes.
std::vector<double> lagrange_values(const std::vector<double>& nodes, double t);

}  // namespace vemsf
