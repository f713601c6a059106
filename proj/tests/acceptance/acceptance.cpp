// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and runtime limits are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "fields.hpp"
#include "oracles.hpp"
#include "vemsf/errors.hpp"
#include "vemsf/studies.hpp"

using namespace vemsf;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = sec < limit_seconds;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("%s %s  %s: %s [%.1f s, limit %.0f s%s]\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), sec,
              limit_seconds, in_time ? "" : ", over time");
  std::fflush(stdout);
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- A1 ----

constexpr int kA1Polygons = 50;
constexpr int kA1Degree = 10;
constexpr double kA1Tol = 1e-12;

Outcome quadrature_exactness() {
  std::mt19937_64 rng(2024);
  const Point2 centre(1.25, 1.25);  // x, y > 0 keeps every monomial integral away from zero
  double worst = 0.0;
  int nonconvex = 0;
  for (int i = 0; i < kA1Polygons; ++i) {
    const auto poly = i % 2 ? oracle::random_star_polygon(rng, 5 + i % 10, centre, 1.0)
                            : oracle::random_convex_polygon(rng, 3 + i % 10, centre, 1.0);
    const auto g = ElementGeometry::from_polygon(poly);
    nonconvex += i % 2;
    const auto rule = sbc_polygon_rule(g, kA1Degree);
    for (int a = 0; a <= kA1Degree; ++a)
      for (int b = 0; a + b <= kA1Degree; ++b) {
        const double ref = oracle::polygon_monomial(poly, a, b);
        const double q = rule.integrate([&](const Point2& p) { return std::pow(p.x(), a) * std::pow(p.y(), b); });
        worst = std::max(worst, std::abs(q - ref) / std::abs(ref));
      }
  }
  return {worst <= kA1Tol, fmt("%d polygons (%d star-shaped), degree <= %d, max rel err %.2e (tol %.0e)", kA1Polygons,
                               nonconvex, kA1Degree, worst, kA1Tol)};
}

// ---- A2 / A3 ----

Outcome patch(bool equilibrium, double tol) {
  double worst = 0.0;
  int meshes = 0;
  for (int k = 2; k <= 3; ++k) {
    const auto rep = run_patch_tests(k, equilibrium, 1);
    for (const auto& l : rep.levels) {
      worst = std::max({worst, l.errors.linf, l.errors.l2, l.errors.energy});
      ++meshes;
    }
  }
  return {worst < tol, fmt("k=2,3 on %d 16-element meshes, worst error %.2e (tol %.0e)", meshes, worst, tol)};
}

// ---- A4 ----

Outcome stability_thresholds() {
  std::string detail;
  bool ok = true;
  for (int k = 2; k <= 3; ++k)
    for (int ell = 3; ell <= 5; ++ell) {
      const int bound = 2 * ell - 2 * k + 5;
      int first = -1;
      for (const auto& s : sweep_regular(k, ell, k == 2 ? 3 : 4, 16)) {
        const bool spurious = s.spurious_count > 0;
        if (spurious && first < 0) first = s.num_vertices;
        ok &= spurious == (s.num_vertices > bound);
      }
      ok &= first == bound + 1;
      detail += fmt("k=%d,l=%d:%d ", k, ell, first);
    }
  return {ok, "first spurious n " + detail + "(expected 2l-2k+6)"};
}

// ---- A5 ----

Outcome perturbation() {
  const auto sweep = sweep_perturbed(3, 4, 8, default_perturbations());
  int at_zero = -1;
  double cleared = -1.0;
  std::string counts;
  for (const auto& s : sweep) {
    if (s.parameter == 0.0) at_zero = s.spurious_count;
    if (s.parameter > 0.0 && s.parameter <= 0.2 && s.error.empty() && s.spurious_count == 0 && cleared < 0) cleared = s.parameter;
    counts += s.error.empty() ? std::to_string(s.spurious_count) : "x";
    counts += ' ';
  }
  return {at_zero >= 1 && cleared > 0.0,
          "octagon k=3 l=4 spurious over delta {0,1e-3,1e-2,.05,.1,.2}: " + counts +
              fmt("(first zero at delta=%.3g h_E)", cleared)};
}

// ---- A6 / A7 / A8 ----

constexpr double kSlopeBand = 0.3;

Outcome optimal_slopes(const std::vector<ConvergenceStudy>& studies) {
  bool ok = true;
  std::string detail;
  for (auto study : studies)
    for (int k = 2; k <= 3; ++k) {
      const auto ladder = default_ladder(study, k);
      const auto rep = run_convergence(study, k, static_cast<int>(ladder.size()), 1);
      const double l2 = rep.rate_l2.back(), en = rep.rate_energy.back();
      ok &= std::abs(l2 - (k + 1)) <= kSlopeBand && std::abs(en - k) <= kSlopeBand;
      detail += to_string(study) + fmt(" k=%d L2 %.2f energy %.2f; ", k, l2, en);
    }
  return {ok, detail + fmt("band +-%.1f", kSlopeBand)};
}

constexpr double kBeamSelfCheckTol = 1e-8;

double beam_self_check() {
  const auto b = sinusoidal_beam();
  const double L = b.domain.width(), q = 100.0;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = L * i / 200.0;
    const auto top = b.exact.stress(Point2(x, b.domain.y1)), bottom = b.exact.stress(Point2(x, b.domain.y0));
    worst = std::max({worst, std::abs(top(1) + q * std::sin(std::numbers::pi * x / L)), std::abs(top(2)),
                      std::abs(bottom(1)), std::abs(bottom(2))});
  }
  return worst / q;
}

Outcome beam() {
  const double residual = beam_self_check();
  if (!(residual < kBeamSelfCheckTol))
    return {false, fmt("beam traction self-check residual %.2e (tol %.0e)", residual, kBeamSelfCheckTol)};
  auto o = optimal_slopes({ConvergenceStudy::beam, ConvergenceStudy::beam_nonconvex});
  o.detail = fmt("self-check residual %.1e; ", residual) + o.detail;
  return o;
}

Outcome plate() {
  bool ok = true;
  std::string detail;
  for (int k = 2; k <= 3; ++k) {
    const auto rep = run_convergence(ConvergenceStudy::plate_hole, k, 3, 1);
    const double en = rep.rate_energy.back();
    ok &= en < k - kSlopeBand;
    detail += fmt("k=%d energy slopes %.2f, %.2f (must be < %.1f); ", k, rep.rate_energy[0], en, k - kSlopeBand);
  }
  return {ok, detail};
}

// ---- A9 ----

struct Worst {
  double reproduction = 0, strain = 0, kernel_pi = 0, kernel_k = 0, k_sym = 0, k_psd = 0, asm_sym = 0, rank = 1e300,
         pi0 = 0, gram_sym = 0;
  bool gram_pd = true;
};

constexpr int kA9Shapes = 20;

Outcome property_suite() {
  const MaterialMatrix mat = material_matrix(1.0, 0.3, PlaneMode::plane_stress);
  std::mt19937_64 rng(77);
  Worst w;
  int pairs = 0, shapes = 0;
  for (int k = 1; k <= 3; ++k)
    for (int ell = std::max(0, k - 1); ell <= 5; ++ell) {
      ++pairs;
      for (int i = 0; i < kA9Shapes; ++i, ++shapes) {
        const auto poly = i % 2 ? oracle::random_star_polygon(rng, 5 + i % 6, Point2(0.3, -0.2), 0.9)
                                : oracle::random_convex_polygon(rng, 4 + i % 6, Point2(0.3, -0.2), 0.9);
        const auto g = ElementGeometry::from_polygon(poly);
        const auto em = build_element(g, k, mat, EllPolicy::fixed(ell));
        const auto& P = em.projectors;
        const VectorMonomialBasis vb(k, P.frame);
        const MatrixMonomialBasis mb(ell, P.frame);

        const Eigen::JacobiSVD<Matrix> svd(P.D);
        w.rank = std::min(w.rank, svd.singularValues().minCoeff() / svd.singularValues().maxCoeff());
        w.pi0 = std::max(w.pi0, (P.Pi0_tilde - P.Pi_S).cwiseAbs().maxCoeff());

        for (int t = 0; t < 3; ++t) {
          const oracle::RandomPolynomial p(k, rng);
          const Vector d = oracle::dofs_of(em.layout, std::cref(p));
          const Vector cs = P.Pi_S * d, ce = P.Pi * d;
          for (const auto& x : {g.centroid, poly[0], Point2(0.5 * (poly[1] + g.centroid))}) {
            w.reproduction = std::max(w.reproduction, (vb.eval(x) * cs - p(x)).norm() / std::max(1.0, p(x).norm()));
            w.strain = std::max(w.strain, (mb.eval(x) * ce - p.strain(x)).norm() / std::max(1.0, p.strain(x).norm()));
          }
        }
        const std::function<Eigen::Vector2d(const Point2&)> modes[] = {
            [](const Point2&) { return Eigen::Vector2d(1, 0); }, [](const Point2&) { return Eigen::Vector2d(0, 1); },
            [](const Point2& x) { return Eigen::Vector2d(-x.y(), x.x()); }};
        for (const auto& m : modes) {
          const Vector r = oracle::dofs_of(em.layout, m);
          w.kernel_pi = std::max(w.kernel_pi, (P.Pi * r).norm() / (P.Pi.norm() * r.norm()));
          w.kernel_k = std::max(w.kernel_k, (em.K * r).norm() / (em.K.norm() * r.norm()));
        }
        w.k_sym = std::max(w.k_sym, (em.K - em.K.transpose()).cwiseAbs().maxCoeff() / em.K.cwiseAbs().maxCoeff());
        const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(em.K).eigenvalues();
        w.k_psd = std::max(w.k_psd, -ev.minCoeff() / ev.maxCoeff());

        const auto sp = serendipity_projector(em.layout, vb);
        const auto dp = l2_displacement_projector(g, vb, sp.Pi_S);
        for (const Matrix* G : {&sp.G_hat, &dp.G_tilde, &P.G}) {
          w.gram_sym = std::max(w.gram_sym, (*G - G->transpose()).cwiseAbs().maxCoeff() / G->cwiseAbs().maxCoeff());
          w.gram_pd &= Eigen::LLT<Matrix>(*G).info() == Eigen::Success;
        }
      }
      // assembly symmetry on a small Voronoi mesh with the same (k, ell)
      MeshParams mp;
      mp.seeds = 12;
      mp.min_boundary_lines = k + 1;
      mp.reseed_attempts = 8;
      mp.min_edge_fraction = 0.1;
      const auto mesh = generate_mesh(MeshFamily::voronoi_lloyd, mp, static_cast<std::uint64_t>(10 * k + ell));
      BoundaryValueProblem bvp;
      bvp.mesh = &mesh;
      bvp.k = k;
      bvp.material = mat;
      bvp.ell_policy = EllPolicy::fixed(ell);
      for (const auto& grp : mesh.boundary_groups()) bvp.conditions[grp] = BoundaryCondition::traction_free();
      const Matrix A(assemble(bvp, build_dof_map(mesh, k)).A);
      w.asm_sym = std::max(w.asm_sym, (A - A.transpose()).cwiseAbs().maxCoeff() / A.cwiseAbs().maxCoeff());
    }
  const bool ok = w.reproduction <= 1e-9 && w.strain <= 1e-9 && w.kernel_pi <= 1e-10 && w.kernel_k <= 1e-10 &&
                  w.k_sym <= 1e-12 && w.k_psd <= 1e-10 && w.asm_sym <= 1e-12 && w.rank > 1e-12 && w.pi0 <= 1e-12 &&
                  w.gram_sym <= 1e-13 && w.gram_pd;
  char buf[640];
  std::snprintf(buf, sizeof buf,
                "%d (k,l) pairs x %d shapes: reproduction %.1e (1e-9), strain %.1e (1e-9), rigid Pi %.1e K %.1e (1e-10), "
                "K sym %.1e (1e-12), K psd %.1e (1e-10), assembly sym %.1e (1e-12), D sv ratio %.1e (>1e-12), "
                "Pi0-PiS %.1e (1e-12), Gram sym %.1e (1e-13) %s",
                pairs, kA9Shapes, w.reproduction, w.strain, w.kernel_pi, w.kernel_k, w.k_sym, w.k_psd, w.asm_sym, w.rank,
                w.pi0, w.gram_sym, w.gram_pd ? "PD" : "not PD");
  (void)shapes;
  return {ok, buf};
}

}  // namespace

int main() {
  run("A1", "quadrature exactness", 10, quadrature_exactness);
  run("A2", "displacement patch tests", 30, [] { return patch(false, 1e-10); });
  run("A3", "equilibrium patch tests", 30, [] { return patch(true, 1e-8); });
  run("A4", "regular-polygon stability thresholds", 60, stability_thresholds);
  run("A5", "vertex perturbation", 10, perturbation);
  run("A6", "manufactured convergence", 600,
      [] { return optimal_slopes({ConvergenceStudy::manufactured1, ConvergenceStudy::manufactured2}); });
  run("A7", "beam convergence", 600, beam);
  run("A8", "plate-with-hole rate loss", 600, plate);
  run("A9", "property suite", 120, property_suite);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
