#pragma once

// Random polynomial vector fields in unscaled monomials, with closed-form strain.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "vemsf/projectors.hpp"

namespace oracle {

using Point2 = Eigen::Vector2d;

struct RandomPolynomial {
  std::vector<std::pair<int, int>> exps;
  std::vector<double> cu, cv;

  RandomPolynomial(int k, std::mt19937_64& rng) : exps(vemsf::monomial_exponents(k)) {
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < exps.size(); ++i) cu.push_back(g(rng)), cv.push_back(g(rng));
  }
  static double pw(double x, int n) { return n < 0 ? 0.0 : std::pow(x, n); }
  Eigen::Vector2d operator()(const Point2& p) const {
    Eigen::Vector2d f = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < exps.size(); ++i)
      f += pw(p.x(), exps[i].first) * pw(p.y(), exps[i].second) * Eigen::Vector2d(cu[i], cv[i]);
    return f;
  }
  /// Engineering Voigt strain (e11, e22, 2 e12).
  Eigen::Vector3d strain(const Point2& p) const {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const auto [a, b] = exps[i];
      const double dx = a * pw(p.x(), a - 1) * pw(p.y(), b), dy = b * pw(p.x(), a) * pw(p.y(), b - 1);
      e += Eigen::Vector3d(cu[i] * dx, cv[i] * dy, cu[i] * dy + cv[i] * dx);
    }
    return e;
  }
};

/// Component-major DOF vector (all x values, then all y values) of u on a layout.
inline vemsf::Vector dofs_of(const vemsf::DofLayout& layout, const std::function<Eigen::Vector2d(const Point2&)>& u) {
  const int s = layout.num_sites();
  vemsf::Vector d(2 * s);
  for (int j = 0; j < s; ++j) {
    const auto v = u(layout.sites[j]);
    d(j) = v.x();
    d(s + j) = v.y();
  }
  return d;
}

}  // namespace oracle
