#pragma once

#include <functional>
#include <vector>

#include "vemsf/projectors.hpp"

namespace vemsf {

using VectorField = std::function<Point2(const Point2&)>;

/// Strain-order policy: smallest ell satisfying the stability bound
/// N_E <= 2 ell - 2k + 5 with ell >= k - 1, or a fixed value.
struct EllPolicy {
  enum class Kind { sufficient_bound, fixed } kind = Kind::sufficient_bound;
  int fixed_ell = 0;

  static EllPolicy sufficient() { return {}; }
  static EllPolicy fixed(int ell) { return {Kind::fixed, ell}; }
};

int select_ell(int num_vertices, int k, EllPolicy policy = {});

struct ForceOptions {
  /// Polynomial degree of the body force, or -1 when it is not a polynomial.
  int body_force_degree = -1;
  /// Project f onto [P_{k-2}]^2 instead of [P_k]^2 (needs k >= 2).
  bool reduced_projection = false;
};

/// Per-local-edge tractions (empty function = none). `on_boundary`, when
/// non-empty, flags the local edges that lie on the domain boundary.
struct EdgeLoads {
  std::vector<VectorField> traction;
  std::vector<bool> on_boundary;
};

struct ElementMatrices {
  Matrix K;
  Vector b;
  DofLayout layout;
  ProjectorSet projectors;
  int ell = 0;
};

/// K_E = Pi^T (int N^T C N) Pi, symmetrized.
Matrix element_stiffness(const ProjectorSet& projectors, const MaterialMatrix& material, const ElementGeometry& geom);

/// b_E = (Pi0~)^T int N~^T f_h + sum over loaded edges of int (N^v)^T t.
/// Throws ConfigurationError for a traction on an edge flagged interior.
Vector element_force(const ProjectorSet& projectors, const DofLayout& layout, const ElementGeometry& geom,
                     const VectorField& body_force, const EdgeLoads& loads = {}, const ForceOptions& options = {});

/// Layout, projectors, stiffness and load of one element.
ElementMatrices build_element(const ElementGeometry& geom, int k, const MaterialMatrix& material,
                              EllPolicy policy = {}, int cell = -1, const VectorField& body_force = {},
                              const EdgeLoads& loads = {}, const ForceOptions& options = {});

}  // namespace vemsf
