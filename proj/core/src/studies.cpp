#include <chrono>

#include "vemsf/errors.hpp"
#include "vemsf/studies.hpp"

namespace vemsf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Box kUnitSquare{0.0, 0.0, 1.0, 1.0};
const Box kBar{0.0, -0.5, 8.0, 0.5};
const Box kPlate{0.0, 0.0, 5.0, 5.0};
constexpr double kHoleRadius = 1.0;
constexpr int kLloydIterations = 3;

}  // namespace

LevelRecord solve_benchmark(const Benchmark& bench, const PolygonalMesh& mesh, int k, EllPolicy policy) {
  const auto t0 = Clock::now();
  BoundaryValueProblem bvp;
  bvp.mesh = &mesh;
  bvp.k = k;
  bvp.material = bench.material;
  bvp.body_force = bench.exact.body_force;
  bvp.force_options.body_force_degree = bench.exact.body_force_degree;
  bvp.ell_policy = policy;
  bvp.conditions = bench.conditions;
  const Solution sol = solve_bvp(bvp);
  LevelRecord rec;
  rec.n_elems = static_cast<int>(mesh.num_cells());
  rec.n_dofs = sol.dofmap.num_dofs();
  rec.h = 1.0 / std::sqrt(static_cast<double>(rec.n_dofs));
  rec.errors = error_norms(sol.u, sol.system, sol.dofmap, bench.material, bench.exact);
  rec.seconds = seconds_since(t0);
  return rec;
}

MeshParams voronoi_params(const Box& domain, int seeds, int k, int lloyd_iterations) {
  MeshParams p;
  p.domain = domain;
  p.seeds = seeds;
  p.lloyd_iterations = lloyd_iterations;
  p.min_edge_fraction = 0.1;
  if (k >= 3) {
    p.min_boundary_lines = k + 1;
    p.reseed_attempts = 8;
  }
  return p;
}

std::vector<std::pair<std::string, PolygonalMesh>> patch_meshes(const Box& domain, int k, bool include_nonconvex,
                                                                std::uint64_t seed) {
  // 16 elements each
  const bool square = domain.width() == domain.height();
  const int nx = square ? 4 : 8, ny = square ? 4 : 2;
  std::vector<std::pair<std::string, PolygonalMesh>> out;
  out.emplace_back("uniform", uniform_grid(domain, nx, ny));
  out.emplace_back("voronoi_random",
                   generate_mesh(MeshFamily::voronoi_random, voronoi_params(domain, 16, k, 0), seed));
  out.emplace_back("voronoi_lloyd",
                   generate_mesh(MeshFamily::voronoi_lloyd, voronoi_params(domain, 16, k, kLloydIterations), seed));
  if (include_nonconvex) out.emplace_back("nonconvex_split", nonconvex_split_grid(domain, square ? 4 : 8, square ? 2 : 1));
  return out;
}

StudyReport run_patch_tests(int k, bool equilibrium, std::uint64_t seed) {
  if (k != 2 && k != 3) throw InvalidParameterError("patch tests need k in {2, 3}");
  const auto t0 = Clock::now();
  const Benchmark bench = equilibrium ? (k == 2 ? quadratic_equilibrium_patch() : cubic_equilibrium_patch())
                                      : (k == 2 ? quadratic_patch() : cubic_patch());
  StudyReport rep;
  rep.name = bench.name;
  rep.k = k;
  rep.mesh_family = "patch";
  rep.parameters["seed"] = std::to_string(seed);
  int level = 0;
  for (const auto& [family, mesh] : patch_meshes(bench.domain, k, !equilibrium, seed)) {
    LevelRecord rec = solve_benchmark(bench, mesh, k);
    rec.level = level++;
    rec.label = family;
    rep.levels.push_back(rec);
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::string to_string(ConvergenceStudy s) {
  switch (s) {
    case ConvergenceStudy::manufactured1: return "manufactured1";
    case ConvergenceStudy::manufactured2: return "manufactured2";
    case ConvergenceStudy::beam: return "beam";
    case ConvergenceStudy::beam_nonconvex: return "beam_nonconvex";
    case ConvergenceStudy::plate_hole: return "plate_hole";
  }
  return "unknown";
}

ConvergenceStudy parse_convergence_study(const std::string& name) {
  for (auto s : {ConvergenceStudy::manufactured1, ConvergenceStudy::manufactured2, ConvergenceStudy::beam,
                 ConvergenceStudy::beam_nonconvex, ConvergenceStudy::plate_hole})
    if (to_string(s) == name) return s;
  throw InvalidParameterError("unknown study '" + name + "'");
}

std::vector<int> default_ladder(ConvergenceStudy s, int k) {
  switch (s) {
    case ConvergenceStudy::manufactured1:
    case ConvergenceStudy::manufactured2: return {64, 256, 1024, 4096};
    case ConvergenceStudy::beam: return {150, 1000, 3500, 8000};
    case ConvergenceStudy::beam_nonconvex: return k == 2 ? std::vector<int>{4, 8, 16, 32} : std::vector<int>{2, 4, 8, 16};
    case ConvergenceStudy::plate_hole: return {250, 1500, 6000};
  }
  return {};
}

PolygonalMesh study_mesh(ConvergenceStudy s, int v, int k, std::uint64_t seed) {
  switch (s) {
    case ConvergenceStudy::manufactured1:
    case ConvergenceStudy::manufactured2:
      return generate_mesh(MeshFamily::voronoi_lloyd, voronoi_params(kUnitSquare, v, k, kLloydIterations), seed);
    case ConvergenceStudy::beam:
      return generate_mesh(MeshFamily::voronoi_lloyd, voronoi_params(kBar, v, k, kLloydIterations), seed);
    case ConvergenceStudy::beam_nonconvex:
      return nonconvex_split_grid(kBar, 8 * v, v);
    case ConvergenceStudy::plate_hole:
      return voronoi_plate_with_hole(kHoleRadius, voronoi_params(kPlate, v, k, kLloydIterations), seed);
  }
  throw InvalidParameterError("unknown study");
}

namespace {

Benchmark study_benchmark(ConvergenceStudy s) {
  switch (s) {
    case ConvergenceStudy::manufactured1: return manufactured1();
    case ConvergenceStudy::manufactured2: return manufactured2();
    case ConvergenceStudy::beam:
    case ConvergenceStudy::beam_nonconvex: return sinusoidal_beam();
    case ConvergenceStudy::plate_hole: return plate_with_hole();
  }
  throw InvalidParameterError("unknown study");
}

std::string study_family(ConvergenceStudy s) {
  switch (s) {
    case ConvergenceStudy::beam_nonconvex: return "nonconvex_split";
    case ConvergenceStudy::plate_hole: return "voronoi_plate";
    default: return "voronoi_lloyd";
  }
}

}  // namespace

StudyReport run_convergence(ConvergenceStudy study, int k, int levels, std::uint64_t seed, std::vector<int> ladder) {
  if (k != 2 && k != 3) throw InvalidParameterError("convergence studies need k in {2, 3}");
  if (ladder.empty()) ladder = default_ladder(study, k);
  if (levels < 3 || levels > static_cast<int>(ladder.size()))
    throw InvalidParameterError("levels must lie in [3, " + std::to_string(ladder.size()) + "]");
  const auto t0 = Clock::now();
  const Benchmark bench = study_benchmark(study);
  StudyReport rep;
  rep.name = to_string(study);
  rep.k = k;
  rep.mesh_family = study_family(study);
  rep.parameters["seed"] = std::to_string(seed);
  std::string lad;
  for (int i = 0; i < levels; ++i) lad += (i ? " " : "") + std::to_string(ladder[i]);
  rep.parameters["ladder"] = lad;
  std::vector<double> l2, en, nd;
  for (int i = 0; i < levels; ++i) {
    const PolygonalMesh mesh = study_mesh(study, ladder[i], k, seed);
    LevelRecord rec = solve_benchmark(bench, mesh, k);
    rec.level = i;
    rec.label = std::to_string(ladder[i]);
    rep.levels.push_back(rec);
    l2.push_back(rec.errors.l2);
    en.push_back(rec.errors.energy);
    nd.push_back(rec.n_dofs);
  }
  rep.rate_l2 = convergence_rate(l2, nd);
  rep.rate_energy = convergence_rate(en, nd);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::string to_string(EigenFamily f) {
  switch (f) {
    case EigenFamily::regular: return "regular";
    case EigenFamily::perturbed: return "perturbed";
    case EigenFamily::inserted: return "inserted";
  }
  return "unknown";
}

EigenFamily parse_eigen_family(const std::string& name) {
  for (auto f : {EigenFamily::regular, EigenFamily::perturbed, EigenFamily::inserted})
    if (to_string(f) == name) return f;
  throw InvalidParameterError("unknown eigen family '" + name + "'");
}

std::vector<SpectrumReport> run_eigen_studies(const EigenStudyConfig& c) {
  if (c.k < 1 || c.k > 3) throw InvalidParameterError("eigen studies need k in [1, 3]");
  if (c.ell < c.k - 1) throw InvalidParameterError("ell must be >= k - 1");
  switch (c.family) {
    case EigenFamily::regular: return sweep_regular(c.k, c.ell, 3, c.nmax);
    case EigenFamily::perturbed:
      return sweep_perturbed(c.k, c.ell, c.sides > 0 ? c.sides : 2 * c.ell, default_perturbations());
    case EigenFamily::inserted: return sweep_inserted_nodes(c.k, c.ell, c.nmax);
  }
  throw InvalidParameterError("unknown eigen family");
}

}  // namespace vemsf
