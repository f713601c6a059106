#include <Eigen/Eigenvalues>

#include "vemsf/eigenanalysis.hpp"
#include "vemsf/errors.hpp"
#include "vemsf/mesh_generators.hpp"
#include "vemsf/parallel.hpp"

namespace vemsf {

SpectrumReport element_spectrum(const Matrix& K, double threshold) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(K, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EvaluationError("eigen-decomposition failed");
  SpectrumReport r;
  r.eigenvalues = es.eigenvalues();
  r.lambda_max = r.eigenvalues.size() ? r.eigenvalues(r.eigenvalues.size() - 1) : 0.0;
  const double cut = threshold * r.lambda_max;
  r.lambda_min_nonzero = 0.0;
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (r.eigenvalues(i) < cut)
      ++r.zero_count;
    else if (r.lambda_min_nonzero == 0.0)
      r.lambda_min_nonzero = r.eigenvalues(i);
  }
  r.spurious_count = std::max(0, r.zero_count - 3);
  return r;
}

MaterialMatrix eigen_study_material() { return material_matrix(1.0, 0.3, PlaneMode::plane_stress); }

namespace {

SpectrumReport polygon_spectrum(std::span<const Point2> ring, int k, int ell) {
  const ElementGeometry geom = ElementGeometry::from_polygon(ring);
  const ElementMatrices em = build_element(geom, k, eigen_study_material(), EllPolicy::fixed(ell));
  SpectrumReport r = element_spectrum(em.K);
  r.num_vertices = static_cast<int>(ring.size());
  r.k = k;
  r.ell = ell;
  return r;
}

}  // namespace

std::vector<SpectrumReport> sweep_regular(int k, int ell, int n_min, int n_max) {
  if (n_min < 3 || n_max > 64 || n_min > n_max) throw InvalidParameterError("sweep_regular: bad vertex range");
  std::vector<int> ns;
  for (int n = std::max(n_min, k + 1); n <= n_max; ++n) ns.push_back(n);
  std::vector<SpectrumReport> out(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const PolygonalMesh m = regular_polygon(ns[i], 1.0);
    out[i] = polygon_spectrum(m.vertices(), k, ell);
    out[i].family = "regular";
    out[i].parameter = ns[i];
  });
  return out;
}

std::vector<double> default_perturbations() { return {0.0, 1e-3, 1e-2, 0.05, 0.1, 0.2}; }

std::vector<SpectrumReport> sweep_perturbed(int k, int ell, int sides, const std::vector<double>& deltas,
                                            Axis component) {
  const PolygonalMesh base = regular_polygon(sides, 1.0);
  const double h = element_geometry(base, 0).diameter;
  std::vector<SpectrumReport> out(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    SpectrumReport r;
    try {
      const PolygonalMesh m = perturb_vertex(base, 0, component, deltas[i] * h);
      r = polygon_spectrum(m.vertices(), k, ell);
    } catch (const Error& e) {
      r.k = k;
      r.ell = ell;
      r.num_vertices = sides;
      r.error = e.what();
    }
    r.family = "perturbed";
    r.parameter = deltas[i];
    out[i] = r;
  });
  return out;
}

std::vector<SpectrumReport> sweep_inserted_nodes(int k, int ell, int max_nodes) {
  if (max_nodes < 4) throw InvalidParameterError("sweep_inserted_nodes: max_nodes must be >= 4");
  std::vector<SpectrumReport> out(static_cast<std::size_t>(max_nodes - 3));
  parallel_for(out.size(), [&](std::size_t i) {
    const int nodes = 4 + static_cast<int>(i);
    const PolygonalMesh m = grid_with_inserted_nodes(nodes);
    SpectrumReport worst;
    bool first = true;
    for (std::size_t c = 0; c < m.num_cells(); ++c) {
      std::vector<Point2> ring;
      for (int v : m.cell(c)) ring.push_back(m.vertices()[v]);
      SpectrumReport r = polygon_spectrum(ring, k, ell);
      if (first || r.spurious_count > worst.spurious_count ||
          (static_cast<int>(c) == kInsertedGridCentralCell && r.spurious_count == worst.spurious_count)) {
        worst = r;
        first = false;
      }
    }
    worst.family = "inserted";
    worst.parameter = nodes;
    out[i] = worst;
  });
  return out;
}

}  // namespace vemsf
