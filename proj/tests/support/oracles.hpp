#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library's quadrature or projector code.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Point2 = Eigen::Vector2d;
using Triangle = std::array<Point2, 3>;

/// Ear-clipping triangulation of a simple counterclockwise polygon.
std::vector<Triangle> ear_clip(const std::vector<Point2>& polygon);

/// Exact integral of x^a y^b over a triangle from barycentric moments
/// int lambda^g = 2|T| g! / (|g| + 2)!.
double triangle_monomial(const Triangle& t, int a, int b);

/// Exact integral of x^a y^b over a simple polygon via ear clipping.
double polygon_monomial(const std::vector<Point2>& polygon, int a, int b);

/// Grundmann-Moeller rule on a triangle, exact to degree 2s+1 (negative
/// weights for s >= 1).
struct WeightedPoints {
  std::vector<Point2> points;
  std::vector<double> weights;
};
WeightedPoints grundmann_moeller(const Triangle& t, int s);

/// Integral of f over a simple polygon with Grundmann-Moeller rules of
/// degree >= `degree` on an ear-clipping triangulation.
double polygon_integral(const std::vector<Point2>& polygon, int degree, const std::function<double(const Point2&)>& f);

double polygon_area(const std::vector<Point2>& polygon);

/// Convex polygon: n points on an ellipse at jittered angles, then rotated.
std::vector<Point2> random_convex_polygon(std::mt19937_64& rng, int n, const Point2& centre, double radius);

/// Star-shaped (generally nonconvex) simple polygon with random radii.
std::vector<Point2> random_star_polygon(std::mt19937_64& rng, int n, const Point2& centre, double radius);

/// Central finite difference of f along axis (0 = x, 1 = y).
template <class F>
auto central_difference(F&& f, const Point2& x, int axis, double h) {
  Point2 e = Point2::Zero();
  e(axis) = h;
  return ((f(x + e) - f(x - e)) / (2.0 * h)).eval();
}

}  // namespace oracle
