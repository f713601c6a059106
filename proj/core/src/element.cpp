#include <Eigen/QR>

#include "vemsf/element.hpp"
#include "vemsf/errors.hpp"

namespace vemsf {

int select_ell(int num_vertices, int k, EllPolicy policy) {
  if (policy.kind == EllPolicy::Kind::fixed) return policy.fixed_ell;
  if (num_vertices < 3) throw InvalidParameterError("select_ell: N_E must be >= 3");
  if (k < 1 || k > 3) throw InvalidParameterError("select_ell: k must lie in [1, 3]");
  // smallest ell with N_E <= 2 ell - 2k + 5
  const int num = num_vertices + 2 * k - 5;
  const int bound = num <= 0 ? 0 : (num + 1) / 2;
  return std::max(bound, k - 1);
}

Matrix element_stiffness(const ProjectorSet& P, const MaterialMatrix& material, const ElementGeometry& geom) {
  const MatrixMonomialBasis mb(P.ell, P.frame);
  const QuadratureRule rule = sbc_polygon_rule(geom, 2 * P.ell);
  const int m = mb.size();
  Matrix H = Matrix::Zero(m, m);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto N = mb.eval(rule.points[q]);
    H.noalias() += rule.weights[q] * (N.transpose() * material.C * N);
  }
  Matrix K = P.Pi.transpose() * H * P.Pi;
  return 0.5 * (K + K.transpose());
}

Vector element_force(const ProjectorSet& P, const DofLayout& layout, const ElementGeometry& geom,
                     const VectorField& body_force, const EdgeLoads& loads, const ForceOptions& options) {
  const int S = layout.num_sites();
  const int k = layout.k;
  Vector b = Vector::Zero(2 * S);

  if (body_force) {
    const VectorMonomialBasis vb(k, P.frame);
    const int fdeg = options.body_force_degree >= 0 ? options.body_force_degree : k + 2;
    const QuadratureRule rule = sbc_polygon_rule(geom, k + fdeg);
    Vector proj;
    if (!options.reduced_projection) {
      Vector rhs = Vector::Zero(vb.size());
      for (std::size_t q = 0; q < rule.size(); ++q)
        rhs.noalias() += rule.weights[q] * (vb.eval(rule.points[q]).transpose() * body_force(rule.points[q]));
      proj = rhs;
    } else {
      if (k < 2) throw InvalidParameterError("reduced body-force projection needs k >= 2");
      const int nr = (k - 1) * k;
      const QuadratureRule grule = sbc_polygon_rule(geom, std::max(2 * k, k + fdeg));
      Matrix Gr = Matrix::Zero(nr, nr), M = Matrix::Zero(vb.size(), nr);
      Vector fr = Vector::Zero(nr);
      for (std::size_t q = 0; q < grule.size(); ++q) {
        const auto N = vb.eval(grule.points[q]);
        const auto Nr = N.leftCols(nr);
        Gr.noalias() += grule.weights[q] * (Nr.transpose() * Nr);
        M.noalias() += grule.weights[q] * (N.transpose() * Nr);
        fr.noalias() += grule.weights[q] * (Nr.transpose() * body_force(grule.points[q]));
      }
      proj = M * Gr.colPivHouseholderQr().solve(fr);
    }
    b.noalias() += P.Pi0_tilde.transpose() * proj;
  }

  for (std::size_t e = 0; e < loads.traction.size(); ++e) {
    if (!loads.traction[e]) continue;
    if (e >= geom.edges.size()) throw ConfigurationError("traction given for a nonexistent local edge");
    if (!loads.on_boundary.empty() && !loads.on_boundary.at(e))
      throw ConfigurationError("traction applied to interior edge " + std::to_string(e) + " of cell " +
                               std::to_string(layout.cell));
    const auto& E = geom.edges[e];
    const QuadratureRule rule = edge_rule(E.a, E.b, 2 * k + 2);
    const auto& sites = layout.edge_sites[e];
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = (rule.points[q] - E.a).dot(E.b - E.a) / (E.length * E.length);
      const auto lag = lagrange_values(layout.edge_params, t);
      const Point2 tr = loads.traction[e](rule.points[q]);
      for (std::size_t i = 0; i < sites.size(); ++i) {
        b(sites[i]) += rule.weights[q] * lag[i] * tr.x();
        b(S + sites[i]) += rule.weights[q] * lag[i] * tr.y();
      }
    }
  }
  return b;
}

ElementMatrices build_element(const ElementGeometry& geom, int k, const MaterialMatrix& material, EllPolicy policy,
                              int cell, const VectorField& body_force, const EdgeLoads& loads,
                              const ForceOptions& options) {
  ElementMatrices em;
  em.layout = build_dof_layout(geom, k, cell);
  em.ell = select_ell(static_cast<int>(geom.num_vertices()), k, policy);
  em.projectors = build_projectors(geom, em.layout, em.ell);
  em.K = element_stiffness(em.projectors, material, geom);
  em.b = element_force(em.projectors, em.layout, geom, body_force, loads, options);
  return em;
}

}  // namespace vemsf
