#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "vemsf/errors.hpp"
#include "vemsf/projectors.hpp"

namespace vemsf {

int boundary_line_count(const ElementGeometry& geom) { return count_boundary_lines(geom.vertices); }

DofLayout build_dof_layout(const ElementGeometry& geom, int k, int cell) {
  if (k < 1 || k > 3) throw InvalidParameterError("order k must lie in [1, 3]");
  const int eta = boundary_line_count(geom);
  if (k >= eta)
    throw UnsupportedElementError(cell, "order k = " + std::to_string(k) + " needs internal moments (eta_E = " +
                                            std::to_string(eta) + ")");
  DofLayout L;
  L.cell = cell;
  L.k = k;
  L.edge_params = lobatto_edge_nodes(k);
  const int n = static_cast<int>(geom.num_vertices());
  L.sites = geom.vertices;
  L.edge_sites.resize(n);
  for (int e = 0; e < n; ++e) {
    const auto& E = geom.edges[e];
    auto& s = L.edge_sites[e];
    s.push_back(e);
    for (int j = 1; j < k; ++j) {
      const double t = L.edge_params[j];
      s.push_back(static_cast<int>(L.sites.size()));
      L.sites.push_back((1.0 - t) * E.a + t * E.b);
    }
    s.push_back((e + 1) % n);
  }
  return L;
}

Matrix dof_matrix_D(const DofLayout& layout, const VectorMonomialBasis& basis) {
  const int S = layout.num_sites();
  Matrix D(2 * S, basis.size());
  for (int j = 0; j < S; ++j) {
    const auto v = basis.eval(layout.sites[j]);
    D.row(j) = v.row(0);
    D.row(S + j) = v.row(1);
  }
  if (D.rows() < D.cols()) throw RankDeficiencyError("fewer DOFs than basis functions");
  const Eigen::JacobiSVD<Matrix> svd(D);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0)))
    throw RankDeficiencyError("DOF matrix D is rank deficient (cell " + std::to_string(layout.cell) + ")");
  return D;
}

double spd_condition_estimate(const Matrix& spd) {
  const Eigen::LLT<Matrix> llt(spd);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const double rc = llt.rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

namespace {

void check_condition(double cond, const char* what, int cell) {
  if (!(cond <= kMaxCondition))
    throw ConditioningError(std::string(what) + " condition estimate " + std::to_string(cond) + " exceeds 1e14 (cell " +
                            std::to_string(cell) + ")");
}

}  // namespace

SerendipityProjector serendipity_projector(const DofLayout& layout, const VectorMonomialBasis& basis) {
  SerendipityProjector P;
  P.D = dof_matrix_D(layout, basis);
  P.G_hat = P.D.transpose() * P.D;
  P.B_hat = P.D.transpose();
  P.condition = spd_condition_estimate(P.G_hat);
  check_condition(P.condition, "G_hat", layout.cell);
  P.Pi_S = P.G_hat.colPivHouseholderQr().solve(P.B_hat);
  return P;
}

DisplacementProjector l2_displacement_projector(const ElementGeometry& geom, const VectorMonomialBasis& basis,
                                                const Matrix& Pi_S) {
  const int n = basis.size();
  // exact for products of two degree-k fields
  const QuadratureRule rule = sbc_polygon_rule(geom, 2 * basis.order());
  Matrix G = Matrix::Zero(n, n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto N = basis.eval(rule.points[q]);
    G.noalias() += rule.weights[q] * (N.transpose() * N);
  }
  DisplacementProjector P;
  P.G_tilde = 0.5 * (G + G.transpose());
  P.condition = spd_condition_estimate(P.G_tilde);
  check_condition(P.condition, "G_tilde", -1);
  // product and solve in extended precision; in double the cond(G_tilde) ~ 1e6 amplification leaves
  // entries of Pi0 - Pi_S near 1e-12 when |Pi_S| ~ 1e2
  using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixL GL = P.G_tilde.cast<long double>();
  const MatrixL BL = GL * Pi_S.cast<long double>();
  P.B_tilde = BL.cast<double>();
  P.Pi0_tilde = GL.colPivHouseholderQr().solve(BL).cast<double>();
  P.deviation_from_Pi_S = (P.Pi0_tilde - Pi_S).cwiseAbs().maxCoeff();
  if (!(P.deviation_from_Pi_S <= 1e-8 * std::max(1.0, Pi_S.cwiseAbs().maxCoeff())))
    throw ConditioningError("L2 displacement projector departs from the serendipity projector");
  return P;
}

std::vector<double> lagrange_values(const std::vector<double>& nodes, double t) {
  std::vector<double> v(nodes.size(), 1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) v[i] *= (t - nodes[j]) / (nodes[i] - nodes[j]);
  return v;
}

StrainProjector l2_strain_projector(const ElementGeometry& geom, const DofLayout& layout,
                                    const VectorMonomialBasis& vbasis, const MatrixMonomialBasis& mbasis,
                                    const Matrix& Pi_S) {
  const int m = mbasis.size();
  const int S = layout.num_sites();
  const int k = layout.k;
  const int ell = mbasis.order();
  StrainProjector P;

  const QuadratureRule grule = sbc_polygon_rule(geom, 2 * ell);
  Matrix G = Matrix::Zero(m, m);
  for (std::size_t q = 0; q < grule.size(); ++q) {
    const auto N = mbasis.eval(grule.points[q]);
    G.noalias() += grule.weights[q] * (N.transpose() * N);
  }
  P.G = 0.5 * (G + G.transpose());

  Matrix B = Matrix::Zero(m, 2 * S);
  // boundary term: traces of the canonical functions are Lagrange polynomials on each edge
  for (std::size_t e = 0; e < geom.edges.size(); ++e) {
    const auto& E = geom.edges[e];
    const QuadratureRule erule = edge_rule(E.a, E.b, ell + k);
    const auto& sites = layout.edge_sites[e];
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const double t = (erule.points[q] - E.a).dot(E.b - E.a) / (E.length * E.length);
      const auto lag = lagrange_values(layout.edge_params, t);
      const auto N = mbasis.eval(erule.points[q]);
      // rows of N^{dE} N^p
      const Eigen::RowVectorXd r0 = E.normal.x() * N.row(0) + E.normal.y() * N.row(2);
      const Eigen::RowVectorXd r1 = E.normal.y() * N.row(1) + E.normal.x() * N.row(2);
      for (std::size_t i = 0; i < sites.size(); ++i) {
        const double w = erule.weights[q] * lag[i];
        B.col(sites[i]) += w * r0.transpose();
        B.col(S + sites[i]) += w * r1.transpose();
      }
    }
  }
  // volume term with the serendipity polynomial in place of the virtual functions
  if (ell >= 1) {
    const QuadratureRule vrule = sbc_polygon_rule(geom, ell - 1 + k);
    Matrix V = Matrix::Zero(m, vbasis.size());
    for (std::size_t q = 0; q < vrule.size(); ++q)
      V.noalias() += vrule.weights[q] * (mbasis.divergence(vrule.points[q]).transpose() * vbasis.eval(vrule.points[q]));
    B.noalias() -= V * Pi_S;
  }
  P.B = B;
  P.condition = spd_condition_estimate(P.G);
  check_condition(P.condition, "G", layout.cell);
  P.Pi = P.G.colPivHouseholderQr().solve(P.B);
  return P;
}

ProjectorSet build_projectors(const ElementGeometry& geom, const DofLayout& layout, int ell) {
  if (ell < 0) throw InvalidParameterError("strain order ell must be >= 0");
  const ScaledFrame frame{geom.centroid, geom.diameter};
  const VectorMonomialBasis vb(layout.k, frame);
  const MatrixMonomialBasis mb(ell, frame);
  auto ser = serendipity_projector(layout, vb);
  auto disp = l2_displacement_projector(geom, vb, ser.Pi_S);
  auto strain = l2_strain_projector(geom, layout, vb, mb, ser.Pi_S);
  ProjectorSet P;
  P.k = layout.k;
  P.ell = ell;
  P.frame = frame;
  P.D = std::move(ser.D);
  P.Pi_S = std::move(ser.Pi_S);
  P.Pi0_tilde = std::move(disp.Pi0_tilde);
  P.Pi = std::move(strain.Pi);
  P.G = std::move(strain.G);
  P.conditioning = {ser.condition, disp.condition, strain.condition};
  return P;
}

}  // namespace vemsf
