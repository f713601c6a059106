#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "vemsf/errors.hpp"
#include "vemsf/mesh_generators.hpp"
#include "vemsf/rng.hpp"

namespace vemsf {

double Box::diagonal() const { return std::hypot(width(), height()); }

std::vector<Point2> random_seeds(const Box& domain, int count, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Point2> seeds(static_cast<std::size_t>(count));
  for (auto& s : seeds) {
    const double x = rng.uniform(domain.x0, domain.x1);
    const double y = rng.uniform(domain.y0, domain.y1);
    s = Point2(x, y);
  }
  return seeds;
}

namespace {

// Keeps the part of a convex polygon where (x - mid) . dir <= 0.
std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Point2& mid, const Point2& dir) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double fp = (p - mid).dot(dir);
    const double fq = (q - mid).dot(dir);
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

struct SeedGrid {
  SeedGrid(const std::vector<Point2>& seeds, const Box& box) : box(box) {
    const double n = static_cast<double>(std::max<std::size_t>(seeds.size(), 1));
    nx = std::max(1, static_cast<int>(std::lround(std::sqrt(n * box.width() / box.height()))));
    ny = std::max(1, static_cast<int>(std::lround(n / nx)));
    dx = box.width() / nx;
    dy = box.height() / ny;
    buckets.assign(static_cast<std::size_t>(nx * ny), {});
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto [bx, by] = bucket_of(seeds[i]);
      buckets[by * nx + bx].push_back(static_cast<int>(i));
    }
  }

  std::pair<int, int> bucket_of(const Point2& p) const {
    const int bx = std::clamp(static_cast<int>((p.x() - box.x0) / dx), 0, nx - 1);
    const int by = std::clamp(static_cast<int>((p.y() - box.y0) / dy), 0, ny - 1);
    return {bx, by};
  }

  Box box;
  int nx = 1, ny = 1;
  double dx = 1.0, dy = 1.0;
  std::vector<std::vector<int>> buckets;
};

}  // namespace

std::vector<std::vector<Point2>> clipped_voronoi_cells(const std::vector<Point2>& seeds, const Box& domain) {
  if (!(domain.width() > 0.0 && domain.height() > 0.0)) throw InvalidParameterError("degenerate domain box");
  const SeedGrid grid(seeds, domain);
  const std::vector<Point2> box_ring = {Point2(domain.x0, domain.y0), Point2(domain.x1, domain.y0),
                                        Point2(domain.x1, domain.y1), Point2(domain.x0, domain.y1)};
  const double spacing = std::min(grid.dx, grid.dy);
  const double weld = 1e-14 * domain.diagonal();

  std::vector<std::vector<Point2>> cells(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const Point2& s = seeds[i];
    std::vector<Point2> poly = box_ring;
    const auto [bx, by] = grid.bucket_of(s);
    const int max_ring = std::max(grid.nx, grid.ny);
    for (int r = 0; r <= max_ring; ++r) {
      if (r >= 2) {
        double radius = 0.0;
        for (const auto& p : poly) radius = std::max(radius, (p - s).norm());
        if ((r - 1) * spacing > 2.0 * radius) break;
      }
      for (int j = by - r; j <= by + r; ++j) {
        if (j < 0 || j >= grid.ny) continue;
        for (int k = bx - r; k <= bx + r; ++k) {
          if (k < 0 || k >= grid.nx) continue;
          if (std::max(std::abs(j - by), std::abs(k - bx)) != r) continue;
          for (int other : grid.buckets[j * grid.nx + k]) {
            if (static_cast<std::size_t>(other) == i) continue;
            const Point2 dir = seeds[other] - s;
            if (dir.squaredNorm() == 0.0) continue;
            poly = clip_half_plane(poly, 0.5 * (s + seeds[other]), dir);
          }
        }
      }
    }
    // Drop numerically coincident consecutive points left by clipping.
    std::vector<Point2> clean;
    for (const auto& p : poly)
      if (clean.empty() || (p - clean.back()).norm() > weld) clean.push_back(p);
    while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= weld) clean.pop_back();
    cells[i] = std::move(clean);
  }
  return cells;
}

std::vector<Point2> cut_disk(const std::vector<Point2>& poly, const Point2& centre, double radius) {
  const std::size_t n = poly.size();
  auto inside = [&](const Point2& p) { return (p - centre).norm() < radius; };
  // crossing of segment pq with the circle, computed from the lexicographically
  // smaller endpoint so that both cells sharing the edge get the same point
  auto crossing = [&](Point2 p, Point2 q) {
    if (q.x() < p.x() || (q.x() == p.x() && q.y() < p.y())) std::swap(p, q);
    const Point2 d = q - p, f = p - centre;
    const double a = d.dot(d), b = f.dot(d), c = f.dot(f) - radius * radius;
    const double root = std::sqrt(std::max(b * b - a * c, 0.0));
    const double t = inside(p) ? (-b + root) / a : (-b - root) / a;
    return Point2(p + std::clamp(t, 0.0, 1.0) * d);
  };
  std::size_t entries = 0, first_out = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!inside(poly[i]) && inside(poly[(i + 1) % n])) ++entries;
    if (!inside(poly[i]) && first_out == n) first_out = i;
  }
  if (entries == 0) {
    if (first_out == n) throw GeometryError("cell lies inside the hole");
    return poly;
  }
  if (entries > 1) throw GeometryError("cell boundary enters the hole more than once");
  std::vector<Point2> out;
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t i = (first_out + m) % n, j = (i + 1) % n;
    const bool in_i = inside(poly[i]), in_j = inside(poly[j]);
    if (!in_i) out.push_back(poly[i]);
    if (in_i != in_j) out.push_back(crossing(poly[i], poly[j]));
  }
  return out;
}

std::vector<Point2> lloyd_step(const std::vector<Point2>& seeds, const Box& domain) {
  const auto cells = clipped_voronoi_cells(seeds, domain);
  std::vector<Point2> next(seeds.size());
  for (std::size_t i = 0; i < cells.size(); ++i) next[i] = ElementGeometry::from_polygon(cells[i]).centroid;
  return next;
}

std::string classify_box_edge(const Box& domain, const Point2& a, const Point2& b) {
  const double tol = 1e-9 * domain.diagonal();
  auto near = [tol](double u, double v) { return std::abs(u - v) <= tol; };
  if (near(a.y(), domain.y0) && near(b.y(), domain.y0)) return "bottom";
  if (near(a.x(), domain.x1) && near(b.x(), domain.x1)) return "right";
  if (near(a.y(), domain.y1) && near(b.y(), domain.y1)) return "top";
  if (near(a.x(), domain.x0) && near(b.x(), domain.x0)) return "left";
  return "boundary";
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  std::vector<int> parent;
};

// Removes consecutive duplicates and back-and-forth spikes (a, b, a).
void clean_ring(std::vector<int>& ring) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 2; ++i) {
      const std::size_t j = (i + 1) % ring.size();
      if (ring[i] == ring[j]) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
    if (changed || ring.size() < 3) continue;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const std::size_t j = (i + 1) % ring.size(), k = (i + 2) % ring.size();
      if (ring[i] == ring[k]) {
        // drop the spike tip and one copy of its base
        std::vector<int> next;
        for (std::size_t m = 0; m < ring.size(); ++m)
          if (m != j && m != k) next.push_back(ring[m]);
        ring = std::move(next);
        changed = true;
        break;
      }
    }
  }
}

using EdgeCells = std::map<std::pair<int, int>, std::vector<int>>;

EdgeCells undirected_edge_cells(const std::vector<std::vector<int>>& rings) {
  EdgeCells ec;
  for (std::size_t c = 0; c < rings.size(); ++c) {
    const auto& r = rings[c];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int a = r[i], b = r[(i + 1) % r.size()];
      ec[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(c));
    }
  }
  return ec;
}

std::vector<Point2> ring_points(const std::vector<int>& ring, const std::vector<Point2>& verts) {
  std::vector<Point2> pts;
  pts.reserve(ring.size());
  for (int v : ring) pts.push_back(verts[v]);
  return pts;
}

// Merges ring b into ring a across their shared edge (p, q).
std::vector<int> merge_rings(const std::vector<int>& a, const std::vector<int>& b, int p, int q) {
  auto rotate_to = [](const std::vector<int>& r, int start) {
    const auto it = std::find(r.begin(), r.end(), start);
    std::vector<int> out(it, r.end());
    out.insert(out.end(), r.begin(), it);
    return out;
  };
  // Orient so that a runs p -> q.
  const auto ia = std::find(a.begin(), a.end(), p);
  const int after_p = *(std::next(ia) == a.end() ? a.begin() : std::next(ia));
  if (after_p != q) std::swap(p, q);
  std::vector<int> merged = rotate_to(a, q);      // q ... p
  const std::vector<int> tail = rotate_to(b, p);  // p ... q
  merged.insert(merged.end(), tail.begin() + 1, tail.end() - 1);
  clean_ring(merged);
  return merged;
}

}  // namespace

PolygonalMesh mesh_from_polygons(const std::vector<std::vector<Point2>>& polygons,
                                 const std::function<std::string(const Point2&, const Point2&)>& classify,
                                 double domain_diagonal, const PolygonSoupOptions& options) {
  const double tol = options.merge_tolerance * domain_diagonal;
  const double cell_size = std::max(tol, 1e-300);

  // 1. weld coincident points
  std::vector<Point2> verts;
  std::unordered_map<long long, std::vector<int>> hash;
  auto key = [](long long i, long long j) { return i * 73856093LL ^ j * 19349663LL; };
  auto weld = [&](const Point2& p) {
    const long long i = static_cast<long long>(std::floor(p.x() / cell_size));
    const long long j = static_cast<long long>(std::floor(p.y() / cell_size));
    for (long long di = -1; di <= 1; ++di)
      for (long long dj = -1; dj <= 1; ++dj) {
        const auto it = hash.find(key(i + di, j + dj));
        if (it == hash.end()) continue;
        for (int v : it->second)
          if ((verts[v] - p).norm() <= tol) return v;
      }
    const int v = static_cast<int>(verts.size());
    verts.push_back(p);
    hash[key(i, j)].push_back(v);
    return v;
  };

  std::vector<std::vector<int>> rings;
  rings.reserve(polygons.size());
  for (const auto& poly : polygons) {
    std::vector<int> ring;
    ring.reserve(poly.size());
    for (const auto& p : poly) ring.push_back(weld(p));
    clean_ring(ring);
    if (ring.size() >= 3) rings.push_back(std::move(ring));
  }

  // 2. collapse short edges
  if (options.min_edge_length > 0.0) {
    auto ec = undirected_edge_cells(rings);
    // boundary pinning level: 0 interior, 1 on boundary, 2 boundary corner
    std::vector<int> pin(verts.size(), 0);
    std::vector<std::vector<int>> bnd_nbrs(verts.size());
    for (const auto& [e, cs] : ec)
      if (cs.size() == 1) {
        bnd_nbrs[e.first].push_back(e.second);
        bnd_nbrs[e.second].push_back(e.first);
      }
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (bnd_nbrs[v].empty()) continue;
      pin[v] = 1;
      // corners turn by more than 30 degrees; gentler turns follow a curved side
      if (bnd_nbrs[v].size() == 2) {
        const Point2 u = verts[bnd_nbrs[v][0]] - verts[v], w = verts[bnd_nbrs[v][1]] - verts[v];
        if (std::abs(u.x() * w.y() - u.y() * w.x()) > 0.5 * u.norm() * w.norm() || u.dot(w) > 0.0) pin[v] = 2;
      }
    }
    std::vector<std::pair<double, std::pair<int, int>>> candidates;
    for (const auto& [e, cs] : ec) {
      const double len = (verts[e.first] - verts[e.second]).norm();
      if (len < options.min_edge_length) candidates.push_back({len, e});
    }
    std::sort(candidates.begin(), candidates.end());
    UnionFind uf(verts.size());
    for (const auto& [len, e] : candidates) {
      const int a = uf.find(e.first), b = uf.find(e.second);
      if (a == b) continue;
      if ((verts[a] - verts[b]).norm() >= options.min_edge_length) continue;
      const bool boundary_edge = ec.at(e).size() == 1;
      int keep = a, drop = b;
      if (pin[a] < pin[b]) std::swap(keep, drop);
      if (pin[keep] == pin[drop]) {
        if (pin[keep] == 2) continue;
        if (pin[keep] == 1 && !boundary_edge) continue;
        // boundary points stay put so curved sides keep their vertices on the curve
        if (pin[keep] == 0) verts[keep] = 0.5 * (verts[keep] + verts[drop]);
      }
      uf.parent[drop] = keep;
    }
    for (auto& ring : rings) {
      for (int& v : ring) v = uf.find(v);
      clean_ring(ring);
    }
    std::erase_if(rings, [](const std::vector<int>& r) { return r.size() < 3; });
  }

  // 3. merge cells covered by too few lines into their longest-edge neighbour
  if (options.min_boundary_lines > 0) {
    for (std::size_t guard = 0; guard < 4 * rings.size() + 4; ++guard) {
      int target = -1;
      for (std::size_t c = 0; c < rings.size(); ++c)
        if (count_boundary_lines(ring_points(rings[c], verts)) < options.min_boundary_lines) {
          target = static_cast<int>(c);
          break;
        }
      if (target < 0) break;
      const auto ec = undirected_edge_cells(rings);
      const auto& ring = rings[target];
      double best = -1.0;
      int nbr = -1, p = -1, q = -1;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const int a = ring[i], b = ring[(i + 1) % ring.size()];
        const auto& cs = ec.at({std::min(a, b), std::max(a, b)});
        if (cs.size() != 2) continue;
        const double len = (verts[a] - verts[b]).norm();
        if (len > best) {
          best = len;
          nbr = cs[0] == target ? cs[1] : cs[0];
          p = a;
          q = b;
        }
      }
      if (nbr < 0) throw GeometryError("cannot merge an isolated cell with too few boundary lines");
      rings[target] = merge_rings(ring, rings[nbr], p, q);
      rings.erase(rings.begin() + nbr);
    }
  }

  // 4. compact vertices and tag boundary edges
  std::vector<int> new_index(verts.size(), -1);
  std::vector<Point2> used;
  for (auto& ring : rings)
    for (int& v : ring) {
      if (new_index[v] < 0) {
        new_index[v] = static_cast<int>(used.size());
        used.push_back(verts[v]);
      }
      v = new_index[v];
    }
  const auto ec = undirected_edge_cells(rings);
  std::vector<BoundaryEdge> boundary;
  for (std::size_t c = 0; c < rings.size(); ++c) {
    const auto& r = rings[c];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int a = r[i], b = r[(i + 1) % r.size()];
      if (ec.at({std::min(a, b), std::max(a, b)}).size() == 1)
        boundary.push_back({static_cast<int>(c), static_cast<int>(i), classify(used[a], used[b])});
    }
  }
  return PolygonalMesh(std::move(used), std::move(rings), std::move(boundary));
}

}  // namespace vemsf
