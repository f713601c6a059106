#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "vemsf/errors.hpp"
#include "vemsf/quadrature.hpp"

namespace vemsf {

namespace {

// Legendre P_n(x) and its derivative.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

Rule1D compute_gauss(int n) {
  Rule1D r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]; x is the i-th largest root
    r.points[i] = 0.5 * (1.0 - x);
    r.points[n - 1 - i] = 0.5 * (1.0 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) r.points[n / 2] = 0.5;
  return r;
}

}  // namespace

Rule1D gauss_1d(int n) {
  if (n < 1 || n > 30) throw InvalidParameterError("gauss_1d: n must lie in [1, 30]");
  static std::array<Rule1D, 31> cache;
  static std::array<std::once_flag, 31> once;
  std::call_once(once[n], [n] { cache[n] = compute_gauss(n); });
  return cache[n];
}

QuadratureRule sbc_polygon_rule(const ElementGeometry& geom, const Point2& x0, int degree) {
  if (degree < 0 || degree > 40) throw InvalidParameterError("sbc_polygon_rule: degree must lie in [0, 40]");
  const int n = (degree + 2 + 1) / 2;
  const Rule1D g = gauss_1d(n);
  QuadratureRule rule;
  rule.points.reserve(geom.edges.size() * n * n);
  rule.weights.reserve(geom.edges.size() * n * n);
  const double skip_tol = 1e-14 * geom.diameter;
  for (const auto& e : geom.edges) {
    if (!(e.length > 0.0)) throw GeometryError("sbc_polygon_rule: zero-length edge");
    const double dist = (e.a - x0).dot(e.normal);
    if (std::abs(dist) <= skip_tol) continue;
    const double scale = dist * e.length;
    for (int it = 0; it < n; ++it) {
      const Point2 c = e.a + g.points[it] * (e.b - e.a);
      for (int is = 0; is < n; ++is) {
        const double s = g.points[is];
        rule.points.push_back(x0 + s * (c - x0));
        rule.weights.push_back(scale * s * g.weights[is] * g.weights[it]);
      }
    }
  }
  return rule;
}

QuadratureRule sbc_polygon_rule(const ElementGeometry& geom, int degree) {
  return sbc_polygon_rule(geom, geom.vertices.at(0), degree);
}

QuadratureRule edge_rule(const Point2& a, const Point2& b, int degree) {
  const double len = (b - a).norm();
  if (!(len > 0.0)) throw GeometryError("edge_rule: coincident endpoints");
  if (degree < 0) throw InvalidParameterError("edge_rule: negative degree");
  const Rule1D g = gauss_1d(std::max(1, degree / 2 + 1));
  QuadratureRule rule;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    rule.points.push_back(a + g.points[i] * (b - a));
    rule.weights.push_back(g.weights[i] * len);
  }
  return rule;
}

std::vector<double> lobatto_edge_nodes(int k) {
  if (k < 1 || k > 6) throw InvalidParameterError("lobatto_edge_nodes: k must lie in [1, 6]");
  std::vector<double> t(static_cast<std::size_t>(k + 1));
  t[0] = 0.0;
  t[k] = 1.0;
  // interior nodes: roots of P'_k, found by Newton from Chebyshev-Gauss-Lobatto guesses
  for (int i = 1; i < k; ++i) {
    double x = -std::cos(std::numbers::pi * i / k);
    for (int it = 0; it < 100; ++it) {
      // P'_k and P''_k from the Legendre ODE
      const auto [p, dp] = legendre(k, x);
      const double d2p = (2.0 * x * dp - k * (k + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    t[i] = 0.5 * (1.0 + x);
  }
  const std::vector<double> raw = t;
  for (int i = 1; i < k; ++i) t[i] = 0.5 * (raw[i] + 1.0 - raw[k - i]);
  if (k % 2 == 0) t[k / 2] = 0.5;
  return t;
}

}  // namespace vemsf
