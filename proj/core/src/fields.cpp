#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/LU>

#include "vemsf/errors.hpp"
#include "vemsf/fields.hpp"

namespace vemsf {

VectorField traction_from_stress(const StrainField& stress, const Point2& n) {
  return [stress, n](const Point2& x) {
    const Eigen::Vector3d s = stress(x);
    return Point2(s(0) * n.x() + s(2) * n.y(), s(2) * n.x() + s(1) * n.y());
  };
}

BoundaryCondition exact_traction(const StrainField& stress) {
  return BoundaryCondition::neumann([stress](const Point2& x, const Point2& n) {
    const Eigen::Vector3d s = stress(x);
    return Point2(s(0) * n.x() + s(2) * n.y(), s(2) * n.x() + s(1) * n.y());
  });
}

namespace {

// Bivariate polynomial sum c_ab x^a y^b.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<std::tuple<double, int, int>> terms) {
    for (const auto& [c, a, b] : terms) c_[{a, b}] += c;
  }

  double operator()(const Point2& p) const {
    double s = 0.0;
    for (const auto& [e, c] : c_) s += c * std::pow(p.x(), e.first) * std::pow(p.y(), e.second);
    return s;
  }
  Poly dx() const {
    Poly d;
    for (const auto& [e, c] : c_)
      if (e.first > 0) d.c_[{e.first - 1, e.second}] += c * e.first;
    return d;
  }
  Poly dy() const {
    Poly d;
    for (const auto& [e, c] : c_)
      if (e.second > 0) d.c_[{e.first, e.second - 1}] += c * e.second;
    return d;
  }
  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.c_) r.c_[e] += c;
    return r;
  }
  Poly operator*(double s) const {
    Poly r = *this;
    for (auto& [e, c] : r.c_) c *= s;
    return r;
  }
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : c_)
      if (c != 0.0) d = std::max(d, e.first + e.second);
    return d;
  }

 private:
  std::map<std::pair<int, int>, double> c_;
};

// Exact field of a polynomial displacement; the body force is -div(C eps(u)).
AnalyticField polynomial_field(const std::string& label, const Poly& u, const Poly& v, const Eigen::Matrix3d& C) {
  const Poly exx = u.dx(), eyy = v.dy(), gxy = u.dy() + v.dx();
  // stress components as polynomials
  const Poly sxx = exx * C(0, 0) + eyy * C(0, 1) + gxy * C(0, 2);
  const Poly syy = exx * C(1, 0) + eyy * C(1, 1) + gxy * C(1, 2);
  const Poly sxy = exx * C(2, 0) + eyy * C(2, 1) + gxy * C(2, 2);
  const Poly fx = (sxx.dx() + sxy.dy()) * -1.0, fy = (sxy.dx() + syy.dy()) * -1.0;
  AnalyticField f;
  f.label = label;
  f.displacement = [u, v](const Point2& p) { return Point2(u(p), v(p)); };
  f.strain = [exx, eyy, gxy](const Point2& p) { return Eigen::Vector3d(exx(p), eyy(p), gxy(p)); };
  f.stress = [sxx, syy, sxy](const Point2& p) { return Eigen::Vector3d(sxx(p), syy(p), sxy(p)); };
  f.body_force = [fx, fy](const Point2& p) { return Point2(fx(p), fy(p)); };
  f.polynomial_degree = std::max(u.degree(), v.degree());
  f.body_force_degree = std::max(fx.degree(), fy.degree());
  return f;
}

std::map<std::string, BoundaryCondition> all_dirichlet(const AnalyticField& f) {
  std::map<std::string, BoundaryCondition> m;
  for (const char* g : {"bottom", "right", "top", "left"}) m[g] = BoundaryCondition::dirichlet(f.displacement);
  return m;
}

std::map<std::string, BoundaryCondition> clamped_left(const AnalyticField& f) {
  std::map<std::string, BoundaryCondition> m;
  m["left"] = BoundaryCondition::dirichlet(f.displacement);
  for (const char* g : {"bottom", "right", "top"}) m[g] = exact_traction(f.stress);
  return m;
}

StrainField stress_from_strain(const StrainField& strain, const Eigen::Matrix3d& C) {
  return [strain, C](const Point2& p) -> Eigen::Vector3d { return C * strain(p); };
}

constexpr double kPatchE = 1.0, kPatchNu = 0.3;
const Box kUnitSquare{0.0, 0.0, 1.0, 1.0};
const Box kBar{0.0, -0.5, 8.0, 0.5};

}  // namespace

Benchmark quadratic_patch() {
  const auto mat = material_matrix(kPatchE, kPatchNu, PlaneMode::plane_stress);
  const Poly u{{1, 2, 0}, {3, 1, 1}, {7, 0, 2}, {5, 1, 0}, {2, 0, 1}, {8, 0, 0}};
  const Poly v{{6, 2, 0}, {3, 1, 1}, {1, 0, 2}, {4, 1, 0}, {9, 0, 1}, {1, 0, 0}};
  Benchmark b{"quadratic_patch", polynomial_field("quadratic_patch", u, v, mat.C), mat, {}, kUnitSquare};
  b.conditions = all_dirichlet(b.exact);
  return b;
}

Benchmark cubic_patch() {
  const auto mat = material_matrix(kPatchE, kPatchNu, PlaneMode::plane_stress);
  const Poly u{{3, 3, 0}, {6, 2, 1}, {7, 1, 2}, {8, 0, 3}, {1, 2, 0}, {3, 1, 1}, {1, 0, 2}, {5, 1, 0}, {2, 0, 1}, {4, 0, 0}};
  const Poly v{{4, 3, 0}, {7, 2, 1}, {8, 1, 2}, {11, 0, 3}, {2, 2, 0}, {1, 1, 1}, {4, 0, 2}, {8, 1, 0}, {9, 0, 1}, {11, 0, 0}};
  Benchmark b{"cubic_patch", polynomial_field("cubic_patch", u, v, mat.C), mat, {}, kUnitSquare};
  b.conditions = all_dirichlet(b.exact);
  return b;
}

Benchmark quadratic_equilibrium_patch() {
  const auto mat = material_matrix(kPatchE, kPatchNu, PlaneMode::plane_stress);
  const Poly u{{1, 1, 1}}, v{{1, 1, 0}};
  Benchmark b{"quadratic_equilibrium", polynomial_field("quadratic_equilibrium", u, v, mat.C), mat, {}, kBar};
  b.conditions = clamped_left(b.exact);
  return b;
}

Benchmark cubic_equilibrium_patch() {
  // cantilever under end shear P, scaled so the tip deflection P L^3 / (3 E I) is 1
  const double E = kPatchE, nu = kPatchNu, L = 8.0, D = 1.0, I = D * D * D / 12.0;
  const double P = 3.0 * E * I / (L * L * L);
  const auto mat = material_matrix(E, nu, PlaneMode::plane_stress);
  const double c = P / (6.0 * E * I);
  const Poly u{{-c * 6.0 * L, 1, 1}, {c * 3.0, 2, 1}, {-c * (2.0 + nu), 0, 3}, {c * (2.0 + nu) * D * D / 4.0, 0, 1}};
  const Poly v{{c * 3.0 * nu * L, 0, 2}, {-c * 3.0 * nu, 1, 2}, {c * (4.0 + 5.0 * nu) * D * D / 4.0, 1, 0},
               {c * 3.0 * L, 2, 0}, {-c, 3, 0}};
  Benchmark b{"cubic_equilibrium", polynomial_field("cubic_equilibrium", u, v, mat.C), mat, {}, kBar};
  b.conditions = clamped_left(b.exact);
  return b;
}

Benchmark manufactured1() {
  const auto mat = material_matrix(2.5, 0.25, PlaneMode::plane_stress);
  const Poly u{{-1.0 / 80.0, 6, 0}, {0.5, 4, 2}, {-13.0 / 16.0, 2, 4}, {3.0 / 40.0, 0, 6}};
  const Poly v{{0.5, 1, 5}, {-5.0 / 12.0, 3, 3}};
  Benchmark b{"manufactured1", polynomial_field("manufactured1", u, v, mat.C), mat, {}, kUnitSquare};
  b.conditions = all_dirichlet(b.exact);
  return b;
}

Benchmark manufactured2() {
  const auto mat = material_matrix(2.5, 0.25, PlaneMode::plane_stress);
  constexpr double pi = std::numbers::pi;
  AnalyticField f;
  f.label = "manufactured2";
  f.displacement = [](const Point2& p) {
    const double s = std::sin(pi * p.x()) * std::sin(pi * p.y());
    return Point2(p.x() * s, p.y() * s);
  };
  f.strain = [](const Point2& p) {
    const double x = p.x(), y = p.y();
    const double sx = std::sin(pi * x), cx = std::cos(pi * x), sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double ux = sx * sy + pi * x * cx * sy, uy = pi * x * sx * cy;
    const double vx = pi * y * cx * sy, vy = sx * sy + pi * y * sx * cy;
    return Eigen::Vector3d(ux, vy, uy + vx);
  };
  f.stress = stress_from_strain(f.strain, mat.C);
  f.body_force = [](const Point2& p) {
    const double x = p.x(), y = p.y();
    const double sx = std::sin(pi * x), cx = std::cos(pi * x), sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double a = 11.0 / 3.0 * pi * pi, b = 5.0 / 3.0 * pi * pi, c = 7.0 * pi;
    return Point2(a * x * sx * sy - b * y * cx * cy - c * cx * sy, a * y * sx * sy - b * x * cx * cy - c * cy * sx);
  };
  Benchmark b{"manufactured2", f, mat, {}, kUnitSquare};
  b.conditions = all_dirichlet(b.exact);
  return b;
}

std::array<double, 4> beam_airy_constants(double beta, double depth, double load) {
  const double c = 0.5 * depth, bc = beta * c;
  const double sh = std::sinh(bc), ch = std::cosh(bc);
  // rows: sigma_yy(+c) = -load sin, sigma_yy(-c) = 0, sigma_xy(+c) = 0, sigma_xy(-c) = 0
  Eigen::Matrix4d M;
  M << sh, ch, bc * sh, bc * ch,
      -sh, ch, bc * sh, -bc * ch,
      ch, sh, sh + bc * ch, ch + bc * sh,
      ch, -sh, -sh - bc * ch, ch + bc * sh;
  const Eigen::Vector4d rhs(load / (beta * beta), 0.0, 0.0, 0.0);
  const Eigen::Vector4d x = M.partialPivLu().solve(rhs);
  return {x(0), x(1), x(2), x(3)};
}

Benchmark sinusoidal_beam() {
  const double E = 2e5, nu = 0.3, L = 8.0, D = 1.0, q = 100.0;
  const auto mat = material_matrix(E, nu, PlaneMode::plane_stress);
  const double beta = std::numbers::pi / L;
  const auto [A, B, Cc, Dd] = beam_airy_constants(beta, D, q);
  const double n1 = 1.0 + nu, n2 = 1.0 - nu;
  // U, V: y-profiles of the displacement; dU, dV: their y-derivatives
  auto profile = [=](double y) {
    const double Y = beta * y, s = std::sinh(Y), c = std::cosh(Y);
    const double U = A * n1 * s + B * n1 * c + Cc * (n1 * Y * s + 2.0 * c) + Dd * (n1 * Y * c + 2.0 * s);
    const double V = A * n1 * c + B * n1 * s + Cc * (n1 * Y * c - n2 * s) + Dd * (n1 * Y * s - n2 * c);
    const double dU = beta * (A * n1 * c + B * n1 * s + Cc * (n1 * (s + Y * c) + 2.0 * s) + Dd * (n1 * (c + Y * s) + 2.0 * c));
    const double dV = beta * (A * n1 * s + B * n1 * c + Cc * (n1 * (c + Y * s) - n2 * c) + Dd * (n1 * (s + Y * c) - n2 * s));
    return std::array<double, 4>{U, V, dU, dV};
  };
  AnalyticField f;
  f.label = "beam";
  f.displacement = [=](const Point2& p) {
    const auto [U, V, dU, dV] = profile(p.y());
    return Point2(-beta / E * std::cos(beta * p.x()) * U, -beta / E * std::sin(beta * p.x()) * V);
  };
  f.strain = [=](const Point2& p) {
    const auto [U, V, dU, dV] = profile(p.y());
    const double sx = std::sin(beta * p.x()), cx = std::cos(beta * p.x());
    return Eigen::Vector3d(beta * beta / E * sx * U, -beta / E * sx * dV, -beta / E * cx * dU - beta * beta / E * cx * V);
  };
  f.stress = stress_from_strain(f.strain, mat.C);
  f.body_force = [](const Point2&) { return Point2(0.0, 0.0); };
  f.body_force_degree = 0;
  Benchmark b{"beam", f, mat, {}, Box{0.0, -0.5 * D, L, 0.5 * D}};
  b.conditions["left"] = BoundaryCondition::dirichlet(f.displacement);
  b.conditions["right"] = BoundaryCondition::dirichlet(f.displacement);
  b.conditions["top"] = exact_traction(f.stress);
  b.conditions["bottom"] = exact_traction(f.stress);
  return b;
}

Benchmark plate_with_hole() {
  const double E = 2e5, nu = 0.3, a = 1.0, L = 5.0, s0 = 1.0;
  const auto mat = material_matrix(E, nu, PlaneMode::plane_strain);
  const double mu = E / (2.0 * (1.0 + nu)), kappa = 3.0 - 4.0 * nu;
  AnalyticField f;
  f.label = "plate_hole";
  f.displacement = [=](const Point2& p) {
    const double r = p.norm(), t = std::atan2(p.y(), p.x());
    const double ar = a / r, c = a * s0 / (8.0 * mu);
    const double ux = c * (r / a * (kappa + 1.0) * std::cos(t) + 2.0 * ar * ((1.0 + kappa) * std::cos(t) + std::cos(3 * t)) -
                           2.0 * ar * ar * ar * std::cos(3 * t));
    const double uy = c * (r / a * (kappa - 3.0) * std::sin(t) + 2.0 * ar * ((1.0 - kappa) * std::sin(t) + std::sin(3 * t)) -
                           2.0 * ar * ar * ar * std::sin(3 * t));
    return Point2(ux, uy);
  };
  f.stress = [=](const Point2& p) {
    const double r = p.norm(), t = std::atan2(p.y(), p.x());
    const double a2 = a * a / (r * r), a4 = a2 * a2;
    const double sxx = s0 * (1.0 - a2 * (1.5 * std::cos(2 * t) + std::cos(4 * t)) + 1.5 * a4 * std::cos(4 * t));
    const double syy = s0 * (-a2 * (0.5 * std::cos(2 * t) - std::cos(4 * t)) - 1.5 * a4 * std::cos(4 * t));
    const double sxy = s0 * (-a2 * (0.5 * std::sin(2 * t) + std::sin(4 * t)) + 1.5 * a4 * std::sin(4 * t));
    return Eigen::Vector3d(sxx, syy, sxy);
  };
  const Eigen::Matrix3d compliance = mat.C.inverse();
  const auto stress = f.stress;
  f.strain = [stress, compliance](const Point2& p) -> Eigen::Vector3d { return compliance * stress(p); };
  f.body_force = [](const Point2&) { return Point2(0.0, 0.0); };
  f.body_force_degree = 0;
  Benchmark b{"plate_hole", f, mat, {}, Box{0.0, 0.0, L, L}};
  b.conditions["hole"] = BoundaryCondition::traction_free();
  b.conditions["left"] = BoundaryCondition::roller(f.displacement, {true, false});
  b.conditions["bottom"] = BoundaryCondition::roller(f.displacement, {false, true});
  b.conditions["right"] = exact_traction(f.stress);
  b.conditions["top"] = exact_traction(f.stress);
  return b;
}

std::vector<Benchmark> benchmark_catalog() {
  return {quadratic_patch(), cubic_patch(),     quadratic_equilibrium_patch(), cubic_equilibrium_patch(),
          manufactured1(),   manufactured2(),   sinusoidal_beam(),             plate_with_hole()};
}

}  // namespace vemsf
