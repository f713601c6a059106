#include <cmath>

#include "vemsf/errors.hpp"
#include "vemsf/polyspace.hpp"

namespace vemsf {

std::vector<std::pair<int, int>> monomial_exponents(int p) {
  std::vector<std::pair<int, int>> e;
  e.reserve(static_cast<std::size_t>(scalar_dim(p)));
  for (int d = 0; d <= p; ++d)
    for (int a = d; a >= 0; --a) e.emplace_back(a, d - a);
  return e;
}

namespace {

// pw(a, b) = xi^a eta^b for a + b <= p.
class PowerTable {
 public:
  PowerTable(const Point2& s, int p) : p_(p), xi_(p + 1), eta_(p + 1) {
    xi_[0] = eta_[0] = 1.0;
    for (int i = 1; i <= p; ++i) {
      xi_[i] = xi_[i - 1] * s.x();
      eta_[i] = eta_[i - 1] * s.y();
    }
  }
  double operator()(int a, int b) const { return (a < 0 || b < 0) ? 0.0 : xi_[a] * eta_[b]; }

 private:
  int p_;
  std::vector<double> xi_, eta_;
};

}  // namespace

VectorMonomialBasis::VectorMonomialBasis(int k, ScaledFrame frame) : k_(k), frame_(frame) {
  if (k < 1) throw InvalidParameterError("vector basis order must be >= 1");
  if (!(frame.diameter > 0.0)) throw InvalidParameterError("basis scaling must be positive");
  terms_ = {{{0, 1.0, 0, 0}}, {{1, 1.0, 0, 0}}};
  terms_.push_back({{0, -1.0, 0, 1}, {1, 1.0, 1, 0}});
  terms_.push_back({{0, 1.0, 0, 1}, {1, 1.0, 1, 0}});
  terms_.push_back({{0, 1.0, 1, 0}});
  terms_.push_back({{1, 1.0, 0, 1}});
  for (int d = 2; d <= k; ++d)
    for (int a = d; a >= 0; --a) {
      terms_.push_back({{0, 1.0, a, d - a}});
      terms_.push_back({{1, 1.0, a, d - a}});
    }
}

Eigen::Matrix<double, 2, Eigen::Dynamic> VectorMonomialBasis::eval(const Point2& x) const {
  const PowerTable pw(frame_.scaled(x), k_);
  Eigen::Matrix<double, 2, Eigen::Dynamic> out = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, size());
  for (int al = 0; al < size(); ++al)
    for (const auto& t : terms_[al]) out(t.component, al) += t.coefficient * pw(t.a, t.b);
  return out;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> VectorMonomialBasis::strain(const Point2& x) const {
  const PowerTable pw(frame_.scaled(x), k_);
  const double ih = 1.0 / frame_.diameter;
  Eigen::Matrix<double, 3, Eigen::Dynamic> out = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, size());
  for (int al = 0; al < size(); ++al)
    for (const auto& t : terms_[al]) {
      const double dx = t.coefficient * t.a * pw(t.a - 1, t.b) * ih;
      const double dy = t.coefficient * t.b * pw(t.a, t.b - 1) * ih;
      if (t.component == 0) {
        out(0, al) += dx;
        out(2, al) += dy;
      } else {
        out(1, al) += dy;
        out(2, al) += dx;
      }
    }
  return out;
}

MatrixMonomialBasis::MatrixMonomialBasis(int ell, ScaledFrame frame)
    : ell_(ell), frame_(frame), exps_(monomial_exponents(ell)) {
  if (ell < 0) throw InvalidParameterError("matrix basis order must be >= 0");
  if (!(frame.diameter > 0.0)) throw InvalidParameterError("basis scaling must be positive");
}

Eigen::Matrix<double, 3, Eigen::Dynamic> MatrixMonomialBasis::eval(const Point2& x) const {
  const PowerTable pw(frame_.scaled(x), ell_);
  Eigen::Matrix<double, 3, Eigen::Dynamic> out = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const double m = pw(exps_[i].first, exps_[i].second);
    for (int s = 0; s < 3; ++s) out(s, 3 * static_cast<int>(i) + s) = m;
  }
  return out;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> MatrixMonomialBasis::divergence(const Point2& x) const {
  const PowerTable pw(frame_.scaled(x), ell_);
  const double ih = 1.0 / frame_.diameter;
  Eigen::Matrix<double, 2, Eigen::Dynamic> out = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const auto [a, b] = exps_[i];
    const double dx = a * pw(a - 1, b) * ih;
    const double dy = b * pw(a, b - 1) * ih;
    const int c = 3 * static_cast<int>(i);
    out(0, c) = dx;
    out(1, c + 1) = dy;
    out(0, c + 2) = dy;
    out(1, c + 2) = dx;
  }
  return out;
}

std::string to_string(PlaneMode mode) {
  return mode == PlaneMode::plane_stress ? "plane_stress" : "plane_strain";
}

MaterialMatrix material_matrix(double E, double nu, PlaneMode mode) {
  if (!(E > 0.0) || !std::isfinite(E)) throw InvalidParameterError("Young's modulus must be positive");
  if (mode == PlaneMode::plane_strain && nu == 0.5)
    throw SingularMaterialError("nu = 0.5 makes the plane-strain material matrix singular");
  if (!(nu > -1.0 && nu <= 0.5)) throw InvalidParameterError("Poisson ratio must lie in (-1, 0.5]");
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  if (mode == PlaneMode::plane_stress) {
    const double c = E / (1.0 - nu * nu);
    C << c, c * nu, 0.0, c * nu, c, 0.0, 0.0, 0.0, c * (1.0 - nu) / 2.0;
  } else {
    const double c = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
    C << c * (1.0 - nu), c * nu, 0.0, c * nu, c * (1.0 - nu), 0.0, 0.0, 0.0, c * (1.0 - 2.0 * nu) / 2.0;
  }
  return {C, mode, E, nu};
}

}  // namespace vemsf
