#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vemsf {

using Point2 = Eigen::Vector2d;

/// A boundary edge: local edge `local_edge` of `cell` runs from ring vertex
/// local_edge to ring vertex local_edge+1 (cyclically).
struct BoundaryEdge {
  int cell = 0;
  int local_edge = 0;
  std::string group;

  bool operator==(const BoundaryEdge&) const = default;
};

/// Undirected global edge with its canonical orientation (a < b).
struct MeshEdge {
  int a = 0;
  int b = 0;
};

/// Local edge of a cell mapped to a global edge. `reversed` is true when the
/// cell traverses the edge from b to a.
struct CellEdge {
  int edge = 0;
  bool reversed = false;
};

/// Conforming polygonal mesh with counterclockwise cells. Immutable after
/// construction; the constructor validates every structural invariant and
/// throws ValidationError on failure.
class PolygonalMesh {
 public:
  PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells,
                std::vector<BoundaryEdge> boundary);

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  const std::vector<std::vector<int>>& cells() const noexcept { return cells_; }
  const std::vector<BoundaryEdge>& boundary_edges() const noexcept { return boundary_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_cells() const noexcept { return cells_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<int>& cell(std::size_t c) const { return cells_.at(c); }
  const std::vector<MeshEdge>& edges() const noexcept { return edges_; }
  const std::vector<CellEdge>& cell_edges(std::size_t c) const { return cell_edges_.at(c); }

  /// Number of cells incident to each global edge (1 on the boundary, 2 inside).
  int edge_multiplicity(int edge) const { return edge_cells_.at(edge)[1] < 0 ? 1 : 2; }

  /// Group label of each global edge; empty for interior edges.
  const std::string& edge_group(int edge) const { return edge_group_.at(edge); }

  /// Sorted, de-duplicated boundary group names.
  std::vector<std::string> boundary_groups() const;

  double signed_area(std::size_t c) const;
  double total_area() const;

  /// Length of the bounding-box diagonal; sets the coincidence tolerance.
  double bounding_diagonal() const noexcept { return diagonal_; }

  bool operator==(const PolygonalMesh& other) const {
    return vertices_ == other.vertices_ && cells_ == other.cells_ && boundary_ == other.boundary_;
  }

 private:
  void validate_and_index();

  std::vector<Point2> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<BoundaryEdge> boundary_;

  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 2>> edge_cells_;
  std::vector<std::string> edge_group_;
  std::vector<std::vector<CellEdge>> cell_edges_;
  double diagonal_ = 0.0;
};

/// Points closer than this fraction of the bounding diagonal coincide.
inline constexpr double kCoincidenceTolerance = 1e-12;

struct EdgeGeometry {
  Point2 a;
  Point2 b;
  double length = 0.0;
  Point2 normal;  // unit outward normal
};

/// Geometric data of one polygon: centroid, diameter (max vertex distance),
/// area and per-edge length and outward normal.
struct ElementGeometry {
  std::vector<Point2> vertices;
  Point2 centroid;
  double diameter = 0.0;
  double area = 0.0;
  std::vector<EdgeGeometry> edges;

  std::size_t num_vertices() const noexcept { return vertices.size(); }
  double perimeter() const;

  /// Throws GeometryError for non-positive area or zero-length edges.
  static ElementGeometry from_polygon(std::span<const Point2> ccw_vertices);
};

ElementGeometry element_geometry(const PolygonalMesh& mesh, std::size_t cell);

/// Signed area (shoelace), positive for counterclockwise rings.
double signed_area(std::span<const Point2> ring);

/// True when no two non-adjacent edges intersect and no edge is degenerate.
bool is_simple_polygon(std::span<const Point2> ring);

/// Number of distinct straight lines covering the ring boundary. Edges are
/// grouped by their normalized line coefficients, computed in coordinates
/// centred at the first vertex and scaled by the diameter, within `tol`.
int count_boundary_lines(std::span<const Point2> ring, double tol = 1e-10);

enum class Axis { x = 0, y = 1 };

/// Returns a copy of the mesh with one vertex coordinate shifted by delta.
/// Throws GeometryError if any incident cell stops being simple or CCW.
PolygonalMesh perturb_vertex(const PolygonalMesh& mesh, int vertex, Axis component, double delta);

/// Text serialization (format "vemsf-mesh 1", 17 significant digits).
void write_mesh(const PolygonalMesh& mesh, std::ostream& out);
void write_mesh(const PolygonalMesh& mesh, const std::string& path);

/// Parses a mesh; clockwise rings are reoriented and reported in `warnings`.
/// Throws ParseError (with line number) or ValidationError.
PolygonalMesh read_mesh(std::istream& in, std::vector<std::string>* warnings = nullptr);
PolygonalMesh read_mesh(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace vemsf
