#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vemsf/mesh.hpp"

namespace vemsf {

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Box {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }
  double diagonal() const;
};

enum class MeshFamily {
  uniform,
  voronoi_random,
  voronoi_lloyd,
  nonconvex_split,
  regular_ngon,
  grid_with_inserted_nodes,
};

std::string to_string(MeshFamily family);
/// Throws InvalidParameterError for unknown names.
MeshFamily parse_mesh_family(const std::string& name);

/// Parameters for every family; each family reads only its own fields.
struct MeshParams {
  Box domain{};
  // uniform, nonconvex_split (nonconvex_split produces 2*nx*ny cells)
  int nx = 4;
  int ny = 4;
  // voronoi_random, voronoi_lloyd
  int seeds = 16;
  int lloyd_iterations = 3;
  /// Cells covered by fewer distinct lines than this are merged into a
  /// neighbour (use 4 for k = 3 meshes). 0 disables.
  int min_boundary_lines = 0;
  /// Edges shorter than this fraction of the mean seed spacing are collapsed.
  double min_edge_fraction = 0.0;
  /// Reseeding attempts before falling back to merging low-line cells.
  int reseed_attempts = 0;
  // regular_ngon
  int sides = 6;
  double circumradius = 1.0;
  // grid_with_inserted_nodes: node count of the central cell of a 3x3 grid
  int central_nodes = 4;
};

/// Deterministic: identical (family, params, seed) yields bit-identical output.
/// Box boundaries are tagged "bottom", "right", "top", "left"; a regular
/// polygon's edges are tagged "boundary".
PolygonalMesh generate_mesh(MeshFamily family, const MeshParams& params, std::uint64_t seed = 0);

PolygonalMesh uniform_grid(const Box& domain, int nx, int ny);

/// Each rectangle is split by a zig-zag through (x0+w/4, y0+h/2) and
/// (x0+3w/4, y0+3h/4) into a convex quadrilateral and a nonconvex hexagon.
PolygonalMesh nonconvex_split_grid(const Box& domain, int nx, int ny);

/// Single regular n-gon centred at the origin, vertex 0 at (R, 0).
PolygonalMesh regular_polygon(int sides, double circumradius);

/// 3x3 uniform grid on the unit square whose central cell carries
/// `central_nodes` vertices; the extra nodes are equispaced on its edges,
/// assigned round-robin starting with the bottom edge.
PolygonalMesh grid_with_inserted_nodes(int central_nodes);

/// Index of the central cell in grid_with_inserted_nodes.
inline constexpr int kInsertedGridCentralCell = 4;

/// Quarter of a square plate [0, L]^2 with a circular hole of radius a at the
/// origin, meshed with straight-edged quadrilaterals in two mapped blocks
/// (2 * n * n cells). Groups: "hole", "left" (x=0), "bottom" (y=0),
/// "right" (x=L), "top" (y=L). Hole vertices lie exactly on the circle.
PolygonalMesh quarter_plate_with_hole(double hole_radius, double plate_size, int n, double radial_grading = 1.5);

/// Voronoi mesh of params.domain minus the disk of radius `hole_radius`
/// centred at its lower-left corner. Seeds are uniform outside the disk and
/// relaxed by params.lloyd_iterations Lloyd steps; hole edges are chords with
/// both vertices on the circle. Groups as in quarter_plate_with_hole. Reads
/// seeds, lloyd_iterations, min_boundary_lines, min_edge_fraction and
/// reseed_attempts.
PolygonalMesh voronoi_plate_with_hole(double hole_radius, const MeshParams& params, std::uint64_t seed = 0);

// ---- Voronoi machinery (exposed for tests and studies) ----

/// Uniform random seeds in the box, drawn from CounterRng(seed).
std::vector<Point2> random_seeds(const Box& domain, int count, std::uint64_t seed);

/// Voronoi cells of the seeds clipped to the box (counterclockwise rings,
/// in seed order).
std::vector<std::vector<Point2>> clipped_voronoi_cells(const std::vector<Point2>& seeds, const Box& domain);

/// Removes the part of a convex polygon inside the disk, replacing it by the
/// chord between the two boundary crossings. Throws GeometryError when the
/// polygon lies inside the disk or its boundary enters the disk twice.
std::vector<Point2> cut_disk(const std::vector<Point2>& polygon, const Point2& centre, double radius);

/// One Lloyd step: each seed replaced by the centroid of its clipped cell.
std::vector<Point2> lloyd_step(const std::vector<Point2>& seeds, const Box& domain);

struct PolygonSoupOptions {
  double merge_tolerance = 1e-10;  // relative to the domain diagonal
  double min_edge_length = 0.0;    // absolute
  int min_boundary_lines = 0;
};

/// Welds a conforming set of counterclockwise polygons into a mesh: merges
/// coincident vertices, optionally collapses short edges and merges cells
/// with too few boundary lines, then tags boundary edges with `classify`
/// (called with the edge endpoints).
PolygonalMesh mesh_from_polygons(const std::vector<std::vector<Point2>>& polygons,
                                 const std::function<std::string(const Point2&, const Point2&)>& classify,
                                 double domain_diagonal, const PolygonSoupOptions& options = {});

/// Tags an edge with the box side it lies on; "boundary" if none.
std::string classify_box_edge(const Box& domain, const Point2& a, const Point2& b);

}  // namespace vemsf
