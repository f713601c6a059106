#include <cmath>
#include <numbers>

#include "vemsf/errors.hpp"
#include "vemsf/mesh_generators.hpp"
#include "vemsf/rng.hpp"

namespace vemsf {

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::uniform: return "uniform";
    case MeshFamily::voronoi_random: return "voronoi_random";
    case MeshFamily::voronoi_lloyd: return "voronoi_lloyd";
    case MeshFamily::nonconvex_split: return "nonconvex_split";
    case MeshFamily::regular_ngon: return "regular_ngon";
    case MeshFamily::grid_with_inserted_nodes: return "grid_with_inserted_nodes";
  }
  return "unknown";
}

MeshFamily parse_mesh_family(const std::string& name) {
  for (auto f : {MeshFamily::uniform, MeshFamily::voronoi_random, MeshFamily::voronoi_lloyd,
                 MeshFamily::nonconvex_split, MeshFamily::regular_ngon, MeshFamily::grid_with_inserted_nodes})
    if (to_string(f) == name) return f;
  throw InvalidParameterError("unknown mesh family '" + name + "'");
}

namespace {

void check_box(const Box& b) {
  if (!(std::isfinite(b.x0) && std::isfinite(b.x1) && std::isfinite(b.y0) && std::isfinite(b.y1)))
    throw InvalidParameterError("domain box has non-finite bounds");
  if (!(b.width() > 0.0 && b.height() > 0.0)) throw InvalidParameterError("domain box has zero area");
}

std::function<std::string(const Point2&, const Point2&)> box_classifier(const Box& b) {
  return [b](const Point2& p, const Point2& q) { return classify_box_edge(b, p, q); };
}

bool all_cells_have_lines(const std::vector<std::vector<Point2>>& cells, int min_lines) {
  for (const auto& c : cells)
    if (count_boundary_lines(c) < min_lines) return false;
  return true;
}

// Reseeds until the welded mesh, after short-edge collapse, has no cell below
// min_lines; once the attempts run out the first seed is used and such cells
// are merged into a neighbour.
template <class Build, class Classify>
PolygonalMesh weld_with_reseeding(const Build& build_cells, const Classify& classify, double diagonal,
                                  PolygonSoupOptions opts, int min_lines, int attempts, std::uint64_t seed) {
  if (min_lines <= 0) return mesh_from_polygons(build_cells(seed), classify, diagonal, opts);
  for (int attempt = 0; attempt <= attempts; ++attempt) {
    const auto cells = build_cells(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    if (!all_cells_have_lines(cells, min_lines)) continue;
    PolygonalMesh mesh = mesh_from_polygons(cells, classify, diagonal, opts);
    bool ok = true;
    for (std::size_t c = 0; c < mesh.num_cells() && ok; ++c)
      ok = count_boundary_lines(element_geometry(mesh, c).vertices) >= min_lines;
    if (ok) return mesh;
  }
  opts.min_boundary_lines = min_lines;
  return mesh_from_polygons(build_cells(seed), classify, diagonal, opts);
}

PolygonalMesh voronoi_mesh(const MeshParams& p, int lloyd_iterations, std::uint64_t seed) {
  if (p.seeds < 1) throw InvalidParameterError("seed count must be >= 1");
  if (lloyd_iterations < 0) throw InvalidParameterError("Lloyd iteration count must be >= 0");
  if (p.min_edge_fraction < 0.0 || p.reseed_attempts < 0) throw InvalidParameterError("negative Voronoi option");

  PolygonSoupOptions opts;
  opts.min_edge_length = p.min_edge_fraction * std::sqrt(p.domain.area() / p.seeds);

  auto build_cells = [&](std::uint64_t s) {
    auto seeds = random_seeds(p.domain, p.seeds, s);
    for (int it = 0; it < lloyd_iterations; ++it) seeds = lloyd_step(seeds, p.domain);
    return clipped_voronoi_cells(seeds, p.domain);
  };

  return weld_with_reseeding(build_cells, box_classifier(p.domain), p.domain.diagonal(), opts, p.min_boundary_lines,
                             p.reseed_attempts, seed);
}

}  // namespace

PolygonalMesh generate_mesh(MeshFamily family, const MeshParams& params, std::uint64_t seed) {
  switch (family) {
    case MeshFamily::uniform:
      check_box(params.domain);
      return uniform_grid(params.domain, params.nx, params.ny);
    case MeshFamily::voronoi_random:
      check_box(params.domain);
      return voronoi_mesh(params, 0, seed);
    case MeshFamily::voronoi_lloyd:
      check_box(params.domain);
      return voronoi_mesh(params, params.lloyd_iterations, seed);
    case MeshFamily::nonconvex_split:
      check_box(params.domain);
      return nonconvex_split_grid(params.domain, params.nx, params.ny);
    case MeshFamily::regular_ngon:
      return regular_polygon(params.sides, params.circumradius);
    case MeshFamily::grid_with_inserted_nodes:
      return grid_with_inserted_nodes(params.central_nodes);
  }
  throw InvalidParameterError("unknown mesh family");
}

PolygonalMesh uniform_grid(const Box& domain, int nx, int ny) {
  check_box(domain);
  if (nx < 1 || ny < 1) throw InvalidParameterError("grid dimensions must be >= 1");
  const double dx = domain.width() / nx, dy = domain.height() / ny;
  std::vector<Point2> verts;
  verts.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double x = i == nx ? domain.x1 : domain.x0 + i * dx;
      const double y = j == ny ? domain.y1 : domain.y0 + j * dy;
      verts.emplace_back(x, y);
    }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<std::vector<int>> cells;
  std::vector<BoundaryEdge> boundary;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = static_cast<int>(cells.size());
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      if (j == 0) boundary.push_back({c, 0, "bottom"});
      if (i == nx - 1) boundary.push_back({c, 1, "right"});
      if (j == ny - 1) boundary.push_back({c, 2, "top"});
      if (i == 0) boundary.push_back({c, 3, "left"});
    }
  return PolygonalMesh(std::move(verts), std::move(cells), std::move(boundary));
}

PolygonalMesh nonconvex_split_grid(const Box& domain, int nx, int ny) {
  check_box(domain);
  if (nx < 1 || ny < 1) throw InvalidParameterError("grid dimensions must be >= 1");
  const double w = domain.width() / nx, h = domain.height() / ny;
  std::vector<std::vector<Point2>> polys;
  polys.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x0 = domain.x0 + i * w, y0 = domain.y0 + j * h;
      const double x1 = i == nx - 1 ? domain.x1 : x0 + w, y1 = j == ny - 1 ? domain.y1 : y0 + h;
      const Point2 bl(x0, y0), br(x1, y0), tr(x1, y1), tl(x0, y1);
      const Point2 p1(x0 + 0.25 * w, y0 + 0.5 * h), p2(x0 + 0.75 * w, y0 + 0.75 * h);
      polys.push_back({bl, br, p2, p1});
      polys.push_back({br, tr, tl, bl, p1, p2});
    }
  return mesh_from_polygons(polys, box_classifier(domain), domain.diagonal());
}

PolygonalMesh regular_polygon(int sides, double circumradius) {
  if (sides < 3) throw InvalidParameterError("regular polygon needs at least 3 sides");
  if (!(circumradius > 0.0) || !std::isfinite(circumradius)) throw InvalidParameterError("circumradius must be positive");
  std::vector<Point2> verts;
  std::vector<int> ring;
  std::vector<BoundaryEdge> boundary;
  for (int j = 0; j < sides; ++j) {
    const double t = 2.0 * std::numbers::pi * j / sides;
    verts.emplace_back(circumradius * std::cos(t), circumradius * std::sin(t));
    ring.push_back(j);
    boundary.push_back({0, j, "boundary"});
  }
  return PolygonalMesh(std::move(verts), {std::move(ring)}, std::move(boundary));
}

PolygonalMesh grid_with_inserted_nodes(int central_nodes) {
  if (central_nodes < 4) throw InvalidParameterError("central cell needs at least 4 nodes");
  const Box box{0.0, 0.0, 1.0, 1.0};
  const int m = central_nodes - 4;
  std::array<int, 4> per_edge{};
  for (int i = 0; i < m; ++i) ++per_edge[i % 4];

  const double third = 1.0 / 3.0;
  auto corner = [&](int i, int j) { return Point2(i == 3 ? 1.0 : i * third, j == 3 ? 1.0 : j * third); };
  const std::array<Point2, 4> c = {corner(1, 1), corner(2, 1), corner(2, 2), corner(1, 2)};

  // extra[e] holds the nodes along central edge e in its counterclockwise direction
  std::array<std::vector<Point2>, 4> extra;
  for (int e = 0; e < 4; ++e)
    for (int j = 1; j <= per_edge[e]; ++j) {
      const double t = static_cast<double>(j) / (per_edge[e] + 1);
      extra[e].push_back((1.0 - t) * c[e] + t * c[(e + 1) % 4]);
    }

  std::vector<std::vector<Point2>> polys;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      const Point2 bl = corner(i, j), br = corner(i + 1, j), tr = corner(i + 1, j + 1), tl = corner(i, j + 1);
      std::vector<Point2> ring;
      auto side = [&](const Point2& from, const std::vector<Point2>& nodes, bool reversed) {
        ring.push_back(from);
        if (reversed)
          ring.insert(ring.end(), nodes.rbegin(), nodes.rend());
        else
          ring.insert(ring.end(), nodes.begin(), nodes.end());
      };
      const std::vector<Point2> none;
      const bool centre = i == 1 && j == 1;
      // central edge e is shared with the neighbour below (0), right (1), above (2), left (3)
      side(bl, centre ? extra[0] : (i == 1 && j == 2 ? extra[2] : none), !centre);
      side(br, centre ? extra[1] : (i == 0 && j == 1 ? extra[3] : none), !centre);
      side(tr, centre ? extra[2] : (i == 1 && j == 0 ? extra[0] : none), !centre);
      side(tl, centre ? extra[3] : (i == 2 && j == 1 ? extra[1] : none), !centre);
      polys.push_back(std::move(ring));
    }
  return mesh_from_polygons(polys, box_classifier(box), box.diagonal());
}

PolygonalMesh quarter_plate_with_hole(double a, double L, int n, double grading) {
  if (!(a > 0.0 && L > a)) throw InvalidParameterError("plate requires 0 < hole radius < plate size");
  if (n < 1) throw InvalidParameterError("plate resolution must be >= 1");
  if (!(grading > 0.0)) throw InvalidParameterError("radial grading must be positive");
  const int na = 2 * n;
  std::vector<Point2> verts;
  verts.reserve(static_cast<std::size_t>((na + 1) * (n + 1)));
  for (int i = 0; i <= na; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / na;
    Point2 inner(a * std::cos(theta), a * std::sin(theta));
    Point2 outer;
    if (i < n)
      outer = Point2(L, L * std::tan(theta));
    else if (i == n)
      outer = Point2(L, L);
    else
      outer = Point2(L * std::tan(0.5 * std::numbers::pi - theta), L);
    if (i == 0) inner = Point2(a, 0.0);
    if (i == na) {
      inner = Point2(0.0, a);
      outer = Point2(0.0, L);
    }
    for (int j = 0; j <= n; ++j) {
      const double rho = std::pow(static_cast<double>(j) / n, grading);
      verts.push_back(j == 0 ? inner : (j == n ? outer : Point2(inner + rho * (outer - inner))));
    }
  }
  auto id = [n](int i, int j) { return i * (n + 1) + j; };
  std::vector<std::vector<int>> cells;
  std::vector<BoundaryEdge> boundary;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < n; ++j) {
      const int c = static_cast<int>(cells.size());
      cells.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1), id(i + 1, j)});
      if (i == 0) boundary.push_back({c, 0, "bottom"});
      if (j == n - 1) boundary.push_back({c, 1, i < n ? "right" : "top"});
      if (i == na - 1) boundary.push_back({c, 2, "left"});
      if (j == 0) boundary.push_back({c, 3, "hole"});
    }
  return PolygonalMesh(std::move(verts), std::move(cells), std::move(boundary));
}

PolygonalMesh voronoi_plate_with_hole(double hole_radius, const MeshParams& p, std::uint64_t seed) {
  check_box(p.domain);
  const Box& box = p.domain;
  const Point2 centre(box.x0, box.y0);
  if (!(hole_radius > 0.0 && hole_radius < std::min(box.width(), box.height())))
    throw InvalidParameterError("hole radius must be positive and smaller than the plate");
  if (p.seeds < 1 || p.lloyd_iterations < 0 || p.min_edge_fraction < 0.0 || p.reseed_attempts < 0)
    throw InvalidParameterError("invalid plate mesh parameters");

  const double area = box.area() - 0.25 * std::numbers::pi * hole_radius * hole_radius;
  PolygonSoupOptions opts;
  opts.min_edge_length = p.min_edge_fraction * std::sqrt(area / p.seeds);

  auto cut_cells = [&](const std::vector<Point2>& seeds) {
    auto cells = clipped_voronoi_cells(seeds, box);
    for (auto& c : cells) c = cut_disk(c, centre, hole_radius);
    return cells;
  };
  auto build_cells = [&](std::uint64_t s) {
    CounterRng rng(s);
    std::vector<Point2> seeds;
    seeds.reserve(static_cast<std::size_t>(p.seeds));
    while (static_cast<int>(seeds.size()) < p.seeds) {
      const Point2 x(rng.uniform(box.x0, box.x1), rng.uniform(box.y0, box.y1));
      if ((x - centre).norm() > hole_radius) seeds.push_back(x);
    }
    for (int it = 0; it < p.lloyd_iterations; ++it) {
      const auto cells = cut_cells(seeds);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        Point2 c = ElementGeometry::from_polygon(cells[i]).centroid;
        // a centroid can fall in the chord sliver; push it back outside
        const double r = (c - centre).norm();
        if (r <= hole_radius) c = centre + (c - centre) * ((1.0 + 1e-6) * hole_radius / std::max(r, 1e-300));
        seeds[i] = c;
      }
    }
    return cut_cells(seeds);
  };

  const double tol = 1e-9 * box.diagonal();
  auto classify = [box, centre, hole_radius, tol](const Point2& a, const Point2& b) -> std::string {
    std::string side = classify_box_edge(box, a, b);
    if (side != "boundary") return side;
    if (std::abs((a - centre).norm() - hole_radius) <= tol && std::abs((b - centre).norm() - hole_radius) <= tol)
      return "hole";
    return side;
  };

  return weld_with_reseeding(build_cells, classify, box.diagonal(), opts, p.min_boundary_lines, p.reseed_attempts, seed);
}

}  // namespace vemsf
