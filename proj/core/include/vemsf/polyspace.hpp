#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "vemsf/mesh.hpp"

namespace vemsf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Number of scalar monomials of total degree <= p.
constexpr int scalar_dim(int p) noexcept { return p < 0 ? 0 : (p + 1) * (p + 2) / 2; }

/// Exponents (a, b) of xi^a eta^b, graded by degree, xi power descending
/// within a degree: 1, xi, eta, xi^2, xi eta, eta^2, ...
std::vector<std::pair<int, int>> monomial_exponents(int p);

/// Scaled coordinates (xi, eta) = (x - x_E) / h_E.
struct ScaledFrame {
  Point2 centroid = Point2::Zero();
  double diameter = 1.0;

  Point2 scaled(const Point2& x) const { return (x - centroid) / diameter; }
};

/// Vector scaled-monomial basis of [P_k]^2, size (k+1)(k+2). Column order:
/// (1,0), (0,1), (-eta,xi), (eta,xi), (xi,0), (0,eta), then for each degree
/// d >= 2 and each scalar monomial mu of degree d: (mu,0), (0,mu).
/// The first (k-1)k columns span [P_{k-2}]^2.
class VectorMonomialBasis {
 public:
  VectorMonomialBasis(int k, ScaledFrame frame);

  int order() const noexcept { return k_; }
  int size() const noexcept { return (k_ + 1) * (k_ + 2); }
  const ScaledFrame& frame() const noexcept { return frame_; }

  /// 2 x N_k matrix of basis values at x.
  Eigen::Matrix<double, 2, Eigen::Dynamic> eval(const Point2& x) const;

  /// 3 x N_k matrix of engineering Voigt strains (e11, e22, 2 e12) at x.
  Eigen::Matrix<double, 3, Eigen::Dynamic> strain(const Point2& x) const;

  /// Exponents and coefficients of column alpha, component c.
  struct Term {
    int component;
    double coefficient;
    int a;
    int b;
  };
  const std::vector<Term>& terms(int alpha) const { return terms_.at(alpha); }

 private:
  int k_;
  ScaledFrame frame_;
  std::vector<std::vector<Term>> terms_;
};

/// Voigt basis of symmetric-matrix polynomials of degree <= ell: for each
/// scalar monomial mu (in monomial_exponents order) three columns mu*e_11,
/// mu*e_22, mu*e_12. Size 3 (ell+1)(ell+2)/2.
class MatrixMonomialBasis {
 public:
  MatrixMonomialBasis(int ell, ScaledFrame frame);

  int order() const noexcept { return ell_; }
  int size() const noexcept { return 3 * scalar_dim(ell_); }
  const ScaledFrame& frame() const noexcept { return frame_; }

  /// 3 x size matrix N^p(x).
  Eigen::Matrix<double, 3, Eigen::Dynamic> eval(const Point2& x) const;

  /// 2 x size matrix of the divergence operator [[dx,0,dy],[0,dy,dx]] applied
  /// to each column.
  Eigen::Matrix<double, 2, Eigen::Dynamic> divergence(const Point2& x) const;

 private:
  int ell_;
  ScaledFrame frame_;
  std::vector<std::pair<int, int>> exps_;
};

enum class PlaneMode { plane_stress, plane_strain };

std::string to_string(PlaneMode mode);

/// Isotropic constitutive matrix in engineering Voigt notation.
struct MaterialMatrix {
  Eigen::Matrix3d C;
  PlaneMode mode;
  double young;
  double poisson;
};

/// Throws InvalidParameterError for E <= 0 or nu outside (-1, 0.5];
/// SingularMaterialError for nu = 0.5 in plane strain.
MaterialMatrix material_matrix(double young, double poisson, PlaneMode mode);

}  // namespace vemsf
