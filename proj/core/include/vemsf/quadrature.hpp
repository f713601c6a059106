#pragma once

#include <vector>

#include "vemsf/mesh.hpp"

namespace vemsf {

struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }

  template <class F>
  auto integrate(F&& f) const {
    auto sum = f(points[0]) * weights[0];
    for (std::size_t q = 1; q < points.size(); ++q) sum += f(points[q]) * weights[q];
    return sum;
  }
};

struct Rule1D {
  std::vector<double> points;  // in [0, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [0, 1], exact to degree 2n-1.
/// Throws InvalidParameterError unless 1 <= n <= 30.
Rule1D gauss_1d(int n);

/// Scaled boundary cubature exact for total degree <= `degree`. Each edge e_i
/// contributes the triangle (base_point, e_i) mapped from the unit square;
/// its weights carry the signed distance from base_point to the edge line, so
/// nonconvex polygons are handled and points may fall outside (with negative
/// weights). Edges whose line passes through base_point are skipped.
QuadratureRule sbc_polygon_rule(const ElementGeometry& geom, const Point2& base_point, int degree);

/// SBC rule with base point at vertex 0.
QuadratureRule sbc_polygon_rule(const ElementGeometry& geom, int degree);

/// Gauss rule on the segment a-b, exact for traces of degree <= `degree`.
QuadratureRule edge_rule(const Point2& a, const Point2& b, int degree);

/// Edge parameters in [0, 1] of the k+1 Gauss-Lobatto nodes (1 <= k <= 6).
std::vector<double> lobatto_edge_nodes(int k);

}  // namespace vemsf
