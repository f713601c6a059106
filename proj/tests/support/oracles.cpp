#include "oracles.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool strictly_inside(const Point2& p, const Triangle& t) {
  const double eps = 1e-14;
  return cross(t[0], t[1], p) > eps && cross(t[1], t[2], p) > eps && cross(t[2], t[0], p) > eps;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Triangle> ear_clip(const std::vector<Point2>& polygon) {
  std::vector<Point2> p = polygon;
  std::vector<Triangle> out;
  while (p.size() > 3) {
    const std::size_t n = p.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const Point2& a = p[(i + n - 1) % n];
      const Point2& b = p[i];
      const Point2& c = p[(i + 1) % n];
      if (cross(a, b, c) < -1e-14) continue;
      const Triangle t{a, b, c};
      bool empty = true;
      for (std::size_t j = 0; j < n && empty; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        if (strictly_inside(p[j], t)) empty = false;
      }
      if (!empty) continue;
      out.push_back(t);
      p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw std::runtime_error("ear clipping failed: polygon not simple or not counterclockwise");
  }
  out.push_back({p[0], p[1], p[2]});
  return out;
}

double triangle_monomial(const Triangle& t, int a, int b) {
  // polynomial in barycentric coordinates: exponent triple -> coefficient
  std::map<std::array<int, 3>, double> poly{{{0, 0, 0}, 1.0}};
  auto multiply = [&](const std::array<double, 3>& lin) {
    std::map<std::array<int, 3>, double> next;
    for (const auto& [e, c] : poly)
      for (int j = 0; j < 3; ++j) {
        auto f = e;
        ++f[j];
        next[f] += c * lin[j];
      }
    poly = std::move(next);
  };
  for (int i = 0; i < a; ++i) multiply({t[0].x(), t[1].x(), t[2].x()});
  for (int i = 0; i < b; ++i) multiply({t[0].y(), t[1].y(), t[2].y()});
  const double area2 = cross(t[0], t[1], t[2]);
  double sum = 0.0;
  for (const auto& [e, c] : poly)
    sum += c * factorial(e[0]) * factorial(e[1]) * factorial(e[2]) / factorial(e[0] + e[1] + e[2] + 2);
  return area2 * sum;
}

double polygon_monomial(const std::vector<Point2>& polygon, int a, int b) {
  double s = 0.0;
  for (const auto& t : ear_clip(polygon)) s += triangle_monomial(t, a, b);
  return s;
}

WeightedPoints grundmann_moeller(const Triangle& t, int s) {
  const int d = 2 * s + 1, n = 2;
  const double area2 = cross(t[0], t[1], t[2]);
  WeightedPoints r;
  for (int i = 0; i <= s; ++i) {
    const double denom = d + n - 2 * i;
    const double coef = ((i % 2) ? -1.0 : 1.0) * std::pow(2.0, -2 * s) * std::pow(denom, d) /
                        (factorial(i) * factorial(d + n - i));
    const int m = s - i;
    for (int b0 = 0; b0 <= m; ++b0)
      for (int b1 = 0; b0 + b1 <= m; ++b1) {
        const int b2 = m - b0 - b1;
        const double l0 = (2 * b0 + 1) / denom, l1 = (2 * b1 + 1) / denom, l2 = (2 * b2 + 1) / denom;
        r.points.push_back(l0 * t[0] + l1 * t[1] + l2 * t[2]);
        r.weights.push_back(coef * area2);
      }
  }
  return r;
}

double polygon_integral(const std::vector<Point2>& polygon, int degree, const std::function<double(const Point2&)>& f) {
  const int s = std::max(0, degree / 2);
  double sum = 0.0;
  for (const auto& t : ear_clip(polygon)) {
    const auto rule = grundmann_moeller(t, s);
    for (std::size_t q = 0; q < rule.points.size(); ++q) sum += rule.weights[q] * f(rule.points[q]);
  }
  return sum;
}

double polygon_area(const std::vector<Point2>& polygon) {
  double a = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& p = polygon[i];
    const Point2& q = polygon[(i + 1) % polygon.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

namespace {

std::vector<double> jittered_angles(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> gap(0.5, 1.5), phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> g(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : g) total += (x = gap(rng));
  std::vector<double> angles;
  double t = phase(rng);
  for (double x : g) {
    angles.push_back(t);
    t += 2.0 * std::numbers::pi * x / total;
  }
  return angles;
}

}  // namespace

std::vector<Point2> random_convex_polygon(std::mt19937_64& rng, int n, const Point2& centre, double radius) {
  std::uniform_real_distribution<double> aspect(0.6, 1.0), rot(0.0, std::numbers::pi);
  const double ax = radius, ay = radius * aspect(rng), phi = rot(rng);
  std::vector<Point2> p;
  for (double t : jittered_angles(rng, n)) {
    const Point2 e(ax * std::cos(t), ay * std::sin(t));
    p.push_back(centre + Point2(std::cos(phi) * e.x() - std::sin(phi) * e.y(), std::sin(phi) * e.x() + std::cos(phi) * e.y()));
  }
  return p;
}

std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int n, const Point2& centre, double radius) {
  std::uniform_real_distribution<double> r(0.45, 1.0);
  std::vector<Point2> p;
  for (double t : jittered_angles(rng, n)) {
    const double rr = radius * r(rng);
    p.push_back(centre + Point2(rr * std::cos(t), rr * std::sin(t)));
  }
  return p;
}

}  // namespace oracle
