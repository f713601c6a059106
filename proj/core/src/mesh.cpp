#include "vemsf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "vemsf/errors.hpp"

namespace vemsf {

namespace {

std::int64_t edge_key(int a, int b, std::size_t n) {
  return static_cast<std::int64_t>(std::min(a, b)) * static_cast<std::int64_t>(n) + std::max(a, b);
}

double cross(const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Proper or touching intersection of closed segments pq and rs.
bool segments_intersect(const Point2& p, const Point2& q, const Point2& r, const Point2& s, double tol) {
  auto orient = [](const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); };
  auto on_segment = [tol](const Point2& a, const Point2& b, const Point2& c) {
    return std::min(a.x(), b.x()) - tol <= c.x() && c.x() <= std::max(a.x(), b.x()) + tol &&
           std::min(a.y(), b.y()) - tol <= c.y() && c.y() <= std::max(a.y(), b.y()) + tol;
  };
  const double scale = std::max({(q - p).norm(), (s - r).norm(), 1e-300});
  const double eps = tol * scale;
  const double d1 = orient(r, s, p), d2 = orient(r, s, q), d3 = orient(p, q, r), d4 = orient(p, q, s);
  if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
    return true;
  if (std::abs(d1) <= eps && on_segment(r, s, p)) return true;
  if (std::abs(d2) <= eps && on_segment(r, s, q)) return true;
  if (std::abs(d3) <= eps && on_segment(p, q, r)) return true;
  if (std::abs(d4) <= eps && on_segment(p, q, s)) return true;
  return false;
}

}  // namespace

double signed_area(std::span<const Point2> ring) {
  double a = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(ring[i], ring[(i + 1) % n]);
  return 0.5 * a;
}

bool is_simple_polygon(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  double extent = 0.0;
  for (const auto& p : ring) extent = std::max(extent, p.cwiseAbs().maxCoeff());
  const double tol = 1e-12;
  for (std::size_t i = 0; i < n; ++i)
    if ((ring[(i + 1) % n] - ring[i]).norm() <= tol * std::max(extent, 1.0)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], tol)) return false;
    }
  }
  // Adjacent edges folding back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = ring[(i + n - 1) % n];
    const Point2& b = ring[i];
    const Point2& c = ring[(i + 1) % n];
    const Point2 u = a - b, v = c - b;
    if (std::abs(cross(u, v)) <= tol * u.norm() * v.norm() && u.dot(v) > 0) return false;
  }
  return true;
}

PolygonalMesh::PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells,
                             std::vector<BoundaryEdge> boundary)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), boundary_(std::move(boundary)) {
  validate_and_index();
}

void PolygonalMesh::validate_and_index() {
  if (vertices_.empty() || cells_.empty()) throw ValidationError("mesh has no vertices or no cells");

  Point2 lo = vertices_.front(), hi = vertices_.front();
  for (const auto& p : vertices_) {
    if (!p.allFinite()) throw ValidationError("non-finite vertex coordinate");
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  diagonal_ = (hi - lo).norm();
  const double tol = kCoincidenceTolerance * std::max(diagonal_, 1e-300);
  const std::size_t nv = vertices_.size();

  std::unordered_map<std::int64_t, int> edge_index;
  // Directed occupancy: +1 if traversed a->b (a<b), -1 if b->a.
  std::vector<std::array<int, 2>> edge_dir;
  cell_edges_.assign(cells_.size(), {});

  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& ring = cells_[c];
    const std::string where = "cell " + std::to_string(c);
    if (ring.size() < 3) throw ValidationError(where + " has fewer than 3 vertices");
    std::set<int> distinct(ring.begin(), ring.end());
    if (distinct.size() != ring.size()) throw ValidationError(where + " repeats a vertex index");
    for (int v : ring)
      if (v < 0 || static_cast<std::size_t>(v) >= nv) throw ValidationError(where + " has an out-of-range vertex index");
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if ((vertices_[ring[i]] - vertices_[ring[(i + 1) % ring.size()]]).norm() <= tol)
        throw ValidationError(where + " has coincident consecutive vertices");
    }
    if (signed_area(c) <= 0.0) throw ValidationError(where + " is not counterclockwise");

    for (std::size_t i = 0; i < ring.size(); ++i) {
      const int a = ring[i], b = ring[(i + 1) % ring.size()];
      const auto key = edge_key(a, b, nv);
      auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back({std::min(a, b), std::max(a, b)});
        edge_cells_.push_back({static_cast<int>(c), -1});
        edge_dir.push_back({a < b ? 1 : -1, 0});
      } else {
        auto& occ = edge_cells_[it->second];
        if (occ[1] >= 0) throw ValidationError("edge shared by more than two cells at " + where);
        const int dir = a < b ? 1 : -1;
        if (edge_dir[it->second][0] == dir)
          throw ValidationError("edge traversed twice in the same direction at " + where);
        occ[1] = static_cast<int>(c);
        edge_dir[it->second][1] = dir;
      }
      cell_edges_[c].push_back({it->second, a > b});
    }
  }

  edge_group_.assign(edges_.size(), {});
  std::vector<int> tagged(edges_.size(), 0);
  for (const auto& be : boundary_) {
    if (be.cell < 0 || static_cast<std::size_t>(be.cell) >= cells_.size())
      throw ValidationError("boundary entry references a missing cell");
    const auto& ce = cell_edges_[be.cell];
    if (be.local_edge < 0 || static_cast<std::size_t>(be.local_edge) >= ce.size())
      throw ValidationError("boundary entry references a missing local edge");
    if (be.group.empty() || be.group.find_first_of(" \t\r\n") != std::string::npos)
      throw ValidationError("boundary group names must be non-empty and whitespace-free");
    const int e = ce[be.local_edge].edge;
    if (edge_multiplicity(e) != 1) throw ValidationError("interior edge tagged as boundary");
    if (tagged[e]++) throw ValidationError("boundary edge tagged twice");
    edge_group_[e] = be.group;
  }
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edge_multiplicity(static_cast<int>(e)) == 1 && !tagged[e])
      throw ValidationError("boundary edge " + std::to_string(e) + " has no group tag");
}

std::vector<std::string> PolygonalMesh::boundary_groups() const {
  std::set<std::string> names;
  for (const auto& be : boundary_) names.insert(be.group);
  return {names.begin(), names.end()};
}

double PolygonalMesh::signed_area(std::size_t c) const {
  const auto& ring = cells_.at(c);
  std::vector<Point2> pts;
  pts.reserve(ring.size());
  for (int v : ring) pts.push_back(vertices_[v]);
  return vemsf::signed_area(pts);
}

double PolygonalMesh::total_area() const {
  double a = 0.0;
  for (std::size_t c = 0; c < cells_.size(); ++c) a += signed_area(c);
  return a;
}

double ElementGeometry::perimeter() const {
  double p = 0.0;
  for (const auto& e : edges) p += e.length;
  return p;
}

ElementGeometry ElementGeometry::from_polygon(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  ElementGeometry g;
  g.vertices.assign(ring.begin(), ring.end());

  // Centroid and area relative to the first vertex to limit cancellation.
  const Point2 o = ring[0];
  double a2 = 0.0;
  Point2 c = Point2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = ring[i] - o, q = ring[(i + 1) % n] - o;
    const double w = cross(p, q);
    a2 += w;
    c += w * (p + q);
  }
  g.area = 0.5 * a2;
  if (!(g.area > 0.0)) throw GeometryError("polygon has non-positive signed area");
  g.centroid = o + c / (3.0 * a2);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.diameter = std::max(g.diameter, (ring[i] - ring[j]).norm());

  g.edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EdgeGeometry e;
    e.a = ring[i];
    e.b = ring[(i + 1) % n];
    const Point2 t = e.b - e.a;
    e.length = t.norm();
    if (!(e.length > kCoincidenceTolerance * g.diameter)) throw GeometryError("degenerate (zero-length) edge");
    e.normal = Point2(t.y(), -t.x()) / e.length;
    g.edges.push_back(e);
  }
  return g;
}

ElementGeometry element_geometry(const PolygonalMesh& mesh, std::size_t cell) {
  const auto& ring = mesh.cell(cell);
  std::vector<Point2> pts;
  pts.reserve(ring.size());
  for (int v : ring) pts.push_back(mesh.vertices()[v]);
  return ElementGeometry::from_polygon(pts);
}

PolygonalMesh perturb_vertex(const PolygonalMesh& mesh, int vertex, Axis component, double delta) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= mesh.num_vertices())
    throw InvalidParameterError("vertex index out of range");
  auto verts = mesh.vertices();
  verts[vertex][static_cast<int>(component)] += delta;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ring = mesh.cell(c);
    if (std::find(ring.begin(), ring.end(), vertex) == ring.end()) continue;
    std::vector<Point2> pts;
    for (int v : ring) pts.push_back(verts[v]);
    if (!is_simple_polygon(pts) || signed_area(pts) <= 0.0)
      throw GeometryError("perturbation makes cell " + std::to_string(c) + " non-simple");
  }
  return PolygonalMesh(std::move(verts), mesh.cells(), mesh.boundary_edges());
}

}  // namespace vemsf

namespace vemsf {

int count_boundary_lines(std::span<const Point2> ring, double tol) {
  const std::size_t n = ring.size();
  double diam = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, (ring[i] - ring[j]).norm());
  if (!(diam > 0.0)) return 0;
  const Point2 o = ring[0];
  std::vector<Eigen::Vector3d> lines;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = (ring[i] - o) / diam, b = (ring[(i + 1) % n] - o) / diam;
    Point2 nrm(b.y() - a.y(), a.x() - b.x());
    const double len = nrm.norm();
    if (!(len > 0.0)) continue;
    nrm /= len;
    double c = nrm.dot(a);
    if (nrm.x() < -tol || (std::abs(nrm.x()) <= tol && nrm.y() < 0.0)) {
      nrm = -nrm;
      c = -c;
    }
    const Eigen::Vector3d line(nrm.x(), nrm.y(), c);
    bool found = false;
    for (const auto& l : lines)
      if ((l - line).cwiseAbs().maxCoeff() <= tol) {
        found = true;
        break;
      }
    if (!found) lines.push_back(line);
  }
  return static_cast<int>(lines.size());
}

}  // namespace vemsf
