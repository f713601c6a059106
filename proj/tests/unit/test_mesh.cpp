#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "vemsf/errors.hpp"
#include "vemsf/mesh_generators.hpp"

using namespace vemsf;

namespace {

void expect_geometry_invariants(const ElementGeometry& g) {
  double h = 0.0;
  for (const auto& p : g.vertices)
    for (const auto& q : g.vertices) h = std::max(h, (p - q).norm());
  EXPECT_DOUBLE_EQ(g.diameter, h);
  Point2 closure = Point2::Zero();
  for (const auto& e : g.edges) closure += e.length * e.normal;
  EXPECT_LT(std::abs(closure.x()), 1e-12 * g.perimeter());
  EXPECT_LT(std::abs(closure.y()), 1e-12 * g.perimeter());
  EXPECT_GT(g.area, 0.0);
}

void expect_mesh_invariants(const PolygonalMesh& m) {
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    EXPECT_GE(m.cell(c).size(), 3u);
    EXPECT_GT(m.signed_area(c), 0.0);
    expect_geometry_invariants(element_geometry(m, c));
  }
  // Euler characteristic of a disk (holes are not generated by these families)
  EXPECT_EQ(static_cast<long>(m.num_vertices()) - static_cast<long>(m.num_edges()) + static_cast<long>(m.num_cells()), 1);
  std::size_t boundary = 0;
  for (std::size_t e = 0; e < m.num_edges(); ++e) boundary += m.edge_multiplicity(static_cast<int>(e)) == 1;
  EXPECT_EQ(boundary, m.boundary_edges().size());
}

MeshParams params_for(MeshFamily f) {
  MeshParams p;
  p.seeds = 30;
  if (f == MeshFamily::grid_with_inserted_nodes) p.central_nodes = 9;
  return p;
}

}  // namespace

TEST(Mesh, UniformGridCounts) {
  const auto m = generate_mesh(MeshFamily::uniform, MeshParams{}, 0);
  EXPECT_EQ(m.num_cells(), 16u);
  EXPECT_EQ(m.num_vertices(), 25u);
  EXPECT_EQ(m.num_edges(), 40u);
}

TEST(Mesh, RegularHexagonArea) {
  MeshParams p;
  p.sides = 6;
  p.circumradius = 1.0;
  const auto m = generate_mesh(MeshFamily::regular_ngon, p, 0);
  ASSERT_EQ(m.num_cells(), 1u);
  EXPECT_EQ(m.num_vertices(), 6u);
  EXPECT_NEAR(m.signed_area(0), 3.0 * std::sqrt(3.0) / 2.0, 1e-14);
  // (n/2) R^2 sin(2 pi / n) for other n
  for (int n = 3; n <= 16; ++n)
    EXPECT_NEAR(regular_polygon(n, 1.3).signed_area(0), 0.5 * n * 1.69 * std::sin(2.0 * std::numbers::pi / n), 1e-13);
}

TEST(Mesh, LloydDriftBetweenLastIterations) {
  // centroids from the shoelace formula, independent of lloyd_step
  auto centroids = [](const std::vector<std::vector<Point2>>& cells) {
    std::vector<Point2> out;
    for (const auto& ring : cells) {
      double a = 0.0;
      Point2 c = Point2::Zero();
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % ring.size()];
        const double w = p.x() * q.y() - q.x() * p.y();
        a += 0.5 * w;
        c += w * (p + q) / 6.0;
      }
      out.push_back(c / a);
    }
    return out;
  };
  const Box box{};
  std::vector<std::vector<Point2>> history{random_seeds(box, 16, 42)};
  for (int it = 0; it < 3; ++it) {
    const auto next = centroids(clipped_voronoi_cells(history.back(), box));
    const auto lib = lloyd_step(history.back(), box);
    for (std::size_t i = 0; i < next.size(); ++i) EXPECT_LT((next[i] - lib[i]).norm(), 1e-14);
    history.push_back(next);
  }
  MeshParams p;
  p.seeds = 16;
  p.lloyd_iterations = 3;
  const auto m = generate_mesh(MeshFamily::voronoi_lloyd, p, 42);
  EXPECT_EQ(m.num_cells(), 16u);
  double h = 0.0;  // mesh size: largest cell diameter
  for (std::size_t c = 0; c < m.num_cells(); ++c) h = std::max(h, element_geometry(m, c).diameter);
  double drift = 0.0;
  for (std::size_t i = 0; i < 16; ++i) drift = std::max(drift, (history[3][i] - history[2][i]).norm());
  EXPECT_LT(drift, 0.15 * h);
}

TEST(Mesh, ElementGeometryExamples) {
  const auto sq = uniform_grid(Box{}, 1, 1);
  const auto g = element_geometry(sq, 0);
  EXPECT_NEAR(g.centroid.x(), 0.5, 1e-15);
  EXPECT_NEAR(g.centroid.y(), 0.5, 1e-15);
  EXPECT_NEAR(g.diameter, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g.area, 1.0, 1e-15);

  const auto hex = element_geometry(regular_polygon(6, 1.0), 0);
  EXPECT_NEAR(hex.diameter, 2.0, 1e-15);
  EXPECT_NEAR(hex.area, 3.0 * std::sqrt(3.0) / 2.0, 1e-14);

  std::vector<Point2> moved = hex.vertices;
  const Point2 t(3.25, -1.5);
  for (auto& p : moved) p += t;
  const auto hex2 = ElementGeometry::from_polygon(moved);
  EXPECT_NEAR((hex2.centroid - hex.centroid - t).norm(), 0.0, 1e-14);
  EXPECT_NEAR(hex2.diameter, hex.diameter, 1e-14);
}

TEST(Mesh, DegenerateEdgeIsGeometryError) {
  const std::vector<Point2> ring{Point2(0, 0), Point2(1, 0), Point2(1, 0), Point2(0, 1)};
  EXPECT_THROW(ElementGeometry::from_polygon(ring), GeometryError);
}

TEST(Mesh, AllFamiliesSatisfyInvariants) {
  for (auto f : {MeshFamily::uniform, MeshFamily::voronoi_random, MeshFamily::voronoi_lloyd, MeshFamily::nonconvex_split,
                 MeshFamily::regular_ngon, MeshFamily::grid_with_inserted_nodes}) {
    SCOPED_TRACE(to_string(f));
    expect_mesh_invariants(generate_mesh(f, params_for(f), 11));
  }
}

TEST(Mesh, AreaSumsToDomain) {
  const Box box{-1.0, 2.0, 3.0, 3.5};
  for (auto f : {MeshFamily::uniform, MeshFamily::voronoi_random, MeshFamily::voronoi_lloyd, MeshFamily::nonconvex_split}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      MeshParams p = params_for(f);
      p.domain = box;
      const auto m = generate_mesh(f, p, seed);
      EXPECT_NEAR(m.total_area(), box.area(), 1e-10 * box.area()) << to_string(f);
    }
  }
}

TEST(Mesh, InsertedNodesKeepGeometry) {
  for (int n = 4; n <= 12; ++n) {
    const auto m = grid_with_inserted_nodes(n);
    EXPECT_EQ(m.num_cells(), 9u);
    EXPECT_EQ(static_cast<int>(m.cell(kInsertedGridCentralCell).size()), n);
    EXPECT_NEAR(m.total_area(), 1.0, 1e-14);
    EXPECT_NEAR(m.signed_area(kInsertedGridCentralCell), 1.0 / 9.0, 1e-14);
    expect_mesh_invariants(m);
  }
}

TEST(Mesh, GenerationIsDeterministic) {
  for (auto f : {MeshFamily::voronoi_random, MeshFamily::voronoi_lloyd}) {
    const MeshParams p = params_for(f);
    EXPECT_TRUE(generate_mesh(f, p, 9) == generate_mesh(f, p, 9));
    EXPECT_FALSE(generate_mesh(f, p, 9) == generate_mesh(f, p, 10));
  }
}

TEST(Mesh, InvalidParameters) {
  MeshParams p;
  p.sides = 2;
  EXPECT_THROW(generate_mesh(MeshFamily::regular_ngon, p), InvalidParameterError);
  MeshParams flat;
  flat.domain = Box{0.0, 0.0, 1.0, 0.0};
  EXPECT_THROW(generate_mesh(MeshFamily::uniform, flat), InvalidParameterError);
  MeshParams none;
  none.nx = 0;
  EXPECT_THROW(generate_mesh(MeshFamily::uniform, none), InvalidParameterError);
  MeshParams lloyd;
  lloyd.lloyd_iterations = -1;
  EXPECT_THROW(generate_mesh(MeshFamily::voronoi_lloyd, lloyd), InvalidParameterError);
  EXPECT_THROW(parse_mesh_family("hexagonal"), InvalidParameterError);
}

TEST(Mesh, PerturbVertex) {
  const auto m = uniform_grid(Box{}, 2, 2);
  EXPECT_TRUE(perturb_vertex(m, 4, Axis::x, 0.0) == m);
  const auto moved = perturb_vertex(m, 4, Axis::y, 0.1);
  int changed = 0;
  for (std::size_t v = 0; v < m.num_vertices(); ++v)
    for (int c = 0; c < 2; ++c) changed += moved.vertices()[v](c) != m.vertices()[v](c);
  EXPECT_EQ(changed, 1);
  EXPECT_DOUBLE_EQ(moved.vertices()[4].y(), m.vertices()[4].y() + 0.1);
  EXPECT_NEAR(moved.total_area(), 1.0, 1e-14);
  // pushing vertex 0 of the unit square past x = 1 folds the ring
  EXPECT_THROW(perturb_vertex(uniform_grid(Box{}, 1, 1), 0, Axis::x, 2.0), GeometryError);
}

TEST(Mesh, FileRoundTrip) {
  MeshParams p;
  p.seeds = 25;
  const auto m = generate_mesh(MeshFamily::voronoi_lloyd, p, 4);
  std::stringstream s;
  write_mesh(m, s);
  EXPECT_TRUE(read_mesh(s) == m);
}

TEST(Mesh, ReaderRejectsShortRing) {
  std::istringstream in("vemsf-mesh 1\nvertices 3\n0 0\n1 0\n0 1\ncells 1\n2 0 1\nboundary 0\n");
  EXPECT_THROW(read_mesh(in), Error);
}

TEST(Mesh, ReaderReportsLineNumbers) {
  std::istringstream in("vemsf-mesh 1\nvertices 3\n0 0\n1 zero\n0 1\n");
  try {
    read_mesh(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Mesh, ReaderReorientsClockwiseRings) {
  std::istringstream in(
      "vemsf-mesh 1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ncells 1\n4 0 3 2 1\nboundary 4\n0 0 a\n0 1 a\n0 2 a\n0 3 a\n");
  std::vector<std::string> warnings;
  const auto m = read_mesh(in, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_GT(m.signed_area(0), 0.0);
  EXPECT_EQ(m.boundary_edges().size(), 4u);
}

TEST(Mesh, BoundaryLineCount) {
  const std::vector<Point2> sq{Point2(0, 0), Point2(0.5, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)};
  EXPECT_EQ(count_boundary_lines(sq), 4);
  const std::vector<Point2> tri{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  EXPECT_EQ(count_boundary_lines(tri), 3);
}

TEST(Mesh, CutDiskReplacesArcByChord) {
  const std::vector<Point2> sq{Point2(0, 0), Point2(2, 0), Point2(2, 2), Point2(0, 2)};
  const auto cut = cut_disk(sq, Point2(0, 0), 1.0);
  ASSERT_EQ(cut.size(), 5u);
  EXPECT_NEAR(signed_area(cut), 3.5, 1e-14);
  EXPECT_THROW(cut_disk(sq, Point2(1, 1), 5.0), GeometryError);
}

TEST(Mesh, PlateHoleVerticesOnCircle) {
  MeshParams p;
  p.domain = Box{0.0, 0.0, 5.0, 5.0};
  p.seeds = 120;
  p.lloyd_iterations = 3;
  p.min_edge_fraction = 0.1;
  const auto m = voronoi_plate_with_hole(1.0, p, 1);
  const auto groups = m.boundary_groups();
  EXPECT_EQ(groups, (std::vector<std::string>{"bottom", "hole", "left", "right", "top"}));
  int hole_edges = 0;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (m.edge_group(static_cast<int>(e)) != "hole") continue;
    ++hole_edges;
    EXPECT_NEAR(m.vertices()[m.edges()[e].a].norm(), 1.0, 1e-12);
    EXPECT_NEAR(m.vertices()[m.edges()[e].b].norm(), 1.0, 1e-12);
  }
  EXPECT_GT(hole_edges, 2);
  // chords sit inside the disk: the mesh covers the domain plus one circular
  // segment (theta - sin theta) / 2 per hole edge
  double segments = 0.0;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (m.edge_group(static_cast<int>(e)) != "hole") continue;
    const double chord = (m.vertices()[m.edges()[e].a] - m.vertices()[m.edges()[e].b]).norm();
    const double theta = 2.0 * std::asin(0.5 * chord);
    segments += 0.5 * (theta - std::sin(theta));
  }
  EXPECT_NEAR(m.total_area(), 25.0 - std::numbers::pi / 4.0 + segments, 1e-12);
  for (std::size_t c = 0; c < m.num_cells(); ++c) expect_geometry_invariants(element_geometry(m, c));
}
