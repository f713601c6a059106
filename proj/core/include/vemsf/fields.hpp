#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vemsf/element.hpp"
#include "vemsf/mesh_generators.hpp"

namespace vemsf {

using StrainField = std::function<Eigen::Vector3d(const Point2&)>;

/// Exact solution of a benchmark. `strain` is in engineering Voigt form
/// (e11, e22, 2 e12); `stress` in Voigt form (s11, s22, s12).
struct AnalyticField {
  std::string label;
  VectorField displacement;
  StrainField strain;
  StrainField stress;
  VectorField body_force;
  /// Polynomial degree of the displacement, or -1 when not a polynomial.
  int polynomial_degree = -1;
  /// Polynomial degree of the body force, or -1 when not a polynomial.
  int body_force_degree = -1;
};

/// Traction sigma . n of a stress field on a straight edge with outward normal n.
VectorField traction_from_stress(const StrainField& stress, const Point2& normal);

/// Boundary condition of one boundary group. A displacement constrains the
/// components flagged in `mask`; a traction loads the group (only free
/// components matter). Groups with neither are traction-free.
struct BoundaryCondition {
  VectorField displacement;
  std::array<bool, 2> mask{true, true};
  /// Traction as a function of position and outward unit normal.
  std::function<Point2(const Point2&, const Point2&)> traction;

  static BoundaryCondition dirichlet(VectorField u) { return {std::move(u), {true, true}, {}}; }
  static BoundaryCondition roller(VectorField u, std::array<bool, 2> mask) { return {std::move(u), mask, {}}; }
  static BoundaryCondition neumann(std::function<Point2(const Point2&, const Point2&)> t) { return {{}, {false, false}, std::move(t)}; }
  static BoundaryCondition traction_free() { return {{}, {false, false}, {}}; }
};

/// Neumann condition carrying the traction of an exact stress field.
BoundaryCondition exact_traction(const StrainField& stress);

// ---- benchmark catalog ----

struct Benchmark {
  std::string name;
  AnalyticField exact;
  MaterialMatrix material;
  /// Boundary group -> condition, for meshes tagged bottom/right/top/left
  /// (or hole/left/bottom/right/top for the plate).
  std::map<std::string, BoundaryCondition> conditions;
  Box domain;
};

Benchmark quadratic_patch();
Benchmark cubic_patch();
Benchmark quadratic_equilibrium_patch();
Benchmark cubic_equilibrium_patch();
Benchmark manufactured1();
Benchmark manufactured2();
Benchmark sinusoidal_beam();
Benchmark plate_with_hole();

/// Every catalog entry.
std::vector<Benchmark> benchmark_catalog();

/// Constants (A, B, C, D) of the single-mode Airy stress function of the
/// beam, solved from the top and bottom traction conditions.
std::array<double, 4> beam_airy_constants(double beta, double depth, double load);

}  // namespace vemsf
