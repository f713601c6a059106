#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "vemsf/errors.hpp"
#include "vemsf/parallel.hpp"
#include "vemsf/quadrature.hpp"
#include "vemsf/system.hpp"

namespace vemsf {

std::vector<int> DofMap::cell_dofs(std::size_t cell) const {
  const auto& sites = cell_sites.at(cell);
  const std::size_t S = sites.size();
  std::vector<int> dofs(2 * S);
  for (std::size_t i = 0; i < S; ++i) {
    dofs[i] = 2 * sites[i];
    dofs[S + i] = 2 * sites[i] + 1;
  }
  return dofs;
}

DofMap build_dof_map(const PolygonalMesh& mesh, int k) {
  if (k < 1 || k > 3) throw InvalidParameterError("order k must lie in [1, 3]");
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    std::vector<Point2> ring;
    for (int v : mesh.cell(c)) ring.push_back(mesh.vertices()[v]);
    const int eta = count_boundary_lines(ring);
    if (k >= eta)
      throw UnsupportedElementError(static_cast<int>(c), "order k = " + std::to_string(k) +
                                                             " needs internal moments (eta_E = " + std::to_string(eta) + ")");
  }
  DofMap map;
  map.k = k;
  const int nv = static_cast<int>(mesh.num_vertices());
  const int per_edge = k - 1;
  map.num_sites = nv + per_edge * static_cast<int>(mesh.num_edges());
  map.site_positions = mesh.vertices();
  const auto params = lobatto_edge_nodes(k);
  for (const auto& e : mesh.edges()) {
    const Point2& a = mesh.vertices()[e.a];
    const Point2& b = mesh.vertices()[e.b];
    for (int j = 1; j < k; ++j) map.site_positions.push_back((1.0 - params[j]) * a + params[j] * b);
  }
  auto edge_site = [&](int edge, int j) { return nv + edge * per_edge + j; };

  map.cell_sites.resize(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    auto& sites = map.cell_sites[c];
    sites = mesh.cell(c);
    for (const auto& ce : mesh.cell_edges(c))
      for (int j = 0; j < per_edge; ++j) sites.push_back(edge_site(ce.edge, ce.reversed ? per_edge - 1 - j : j));
  }

  std::map<std::string, std::set<int>> groups;
  for (const auto& be : mesh.boundary_edges()) {
    const auto& ce = mesh.cell_edges(be.cell).at(be.local_edge);
    const auto& e = mesh.edges()[ce.edge];
    auto& g = groups[be.group];
    g.insert(e.a);
    g.insert(e.b);
    for (int j = 0; j < per_edge; ++j) g.insert(edge_site(ce.edge, j));
  }
  for (auto& [name, s] : groups) map.group_sites[name] = std::vector<int>(s.begin(), s.end());
  return map;
}

AssembledSystem assemble(const BoundaryValueProblem& bvp, const DofMap& dofmap) {
  if (!bvp.mesh) throw ConfigurationError("boundary value problem has no mesh");
  const PolygonalMesh& mesh = *bvp.mesh;
  for (const auto& g : mesh.boundary_groups())
    if (!bvp.conditions.count(g)) throw ConfigurationError("boundary group '" + g + "' has no condition");
  const auto groups = mesh.boundary_groups();
  for (const auto& [g, bc] : bvp.conditions)
    if (!std::binary_search(groups.begin(), groups.end(), g))
      throw ConfigurationError("condition given for unknown boundary group '" + g + "'");
  if (dofmap.k != bvp.k) throw ConfigurationError("DOF map order differs from the problem order");

  const std::size_t nc = mesh.num_cells();
  // per cell, per local edge: condition of its boundary group, or null
  std::vector<std::vector<const BoundaryCondition*>> edge_bc(nc);
  for (std::size_t c = 0; c < nc; ++c) edge_bc[c].assign(mesh.cell(c).size(), nullptr);
  for (const auto& be : mesh.boundary_edges()) edge_bc[be.cell][be.local_edge] = &bvp.conditions.at(be.group);

  AssembledSystem sys;
  sys.geometry.resize(nc);
  sys.elements.resize(nc);
  parallel_for(nc, [&](std::size_t c) {
    const ElementGeometry geom = element_geometry(mesh, c);
    EdgeLoads loads;
    const std::size_t ne = geom.edges.size();
    loads.traction.resize(ne);
    loads.on_boundary.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      loads.on_boundary[e] = mesh.edge_multiplicity(mesh.cell_edges(c)[e].edge) == 1;
      const BoundaryCondition* bc = edge_bc[c][e];
      if (bc && bc->traction) {
        const Point2 n = geom.edges[e].normal;
        const auto t = bc->traction;
        loads.traction[e] = [t, n](const Point2& x) { return t(x, n); };
      }
    }
    sys.elements[c] =
        build_element(geom, bvp.k, bvp.material, bvp.ell_policy, static_cast<int>(c), bvp.body_force, loads, bvp.force_options);
    const auto& L = sys.elements[c].layout;
    const auto& gs = dofmap.cell_sites[c];
    const double tol = 1e-9 * geom.diameter;
    for (int i = 0; i < L.num_sites(); ++i)
      if ((L.sites[i] - dofmap.site_positions[gs[i]]).norm() > tol)
        throw ValidationError("cell " + std::to_string(c) + ": local DOF site does not match the global numbering");
    sys.geometry[c] = geom;
  });

  std::vector<Eigen::Triplet<double>> trip;
  sys.b = Vector::Zero(dofmap.num_dofs());
  for (std::size_t c = 0; c < nc; ++c) {
    const auto dofs = dofmap.cell_dofs(c);
    const auto& em = sys.elements[c];
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      sys.b(dofs[i]) += em.b(i);
      for (std::size_t j = 0; j < dofs.size(); ++j) trip.emplace_back(dofs[i], dofs[j], em.K(i, j));
    }
  }
  sys.A.resize(dofmap.num_dofs(), dofmap.num_dofs());
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  return sys;
}

ReducedSystem apply_dirichlet(const AssembledSystem& system, const DofMap& dofmap,
                              const std::map<std::string, BoundaryCondition>& conditions) {
  const int n = dofmap.num_dofs();
  ReducedSystem red;
  red.prescribed = Vector::Zero(n);
  red.constrained.assign(n, false);
  for (const auto& [group, bc] : conditions) {
    if (!bc.displacement || !(bc.mask[0] || bc.mask[1])) continue;
    const auto it = dofmap.group_sites.find(group);
    if (it == dofmap.group_sites.end()) continue;
    for (int s : it->second) {
      const Point2 u = bc.displacement(dofmap.site_positions[s]);
      for (int comp = 0; comp < 2; ++comp) {
        if (!bc.mask[comp] || red.constrained[2 * s + comp]) continue;
        if (!std::isfinite(u(comp)))
          throw EvaluationError("Dirichlet data of group '" + group + "' is not finite at a boundary site");
        red.constrained[2 * s + comp] = true;
        red.prescribed(2 * s + comp) = u(comp);
      }
    }
  }
  std::vector<int> reduced_index(n, -1);
  for (int i = 0; i < n; ++i)
    if (!red.constrained[i]) {
      reduced_index[i] = static_cast<int>(red.free_dofs.size());
      red.free_dofs.push_back(i);
    }
  const int nf = static_cast<int>(red.free_dofs.size());
  red.b = Vector(nf);
  for (int i = 0; i < nf; ++i) red.b(i) = system.b(red.free_dofs[i]);
  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < system.A.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(system.A, col); it; ++it) {
      const int r = reduced_index[it.row()], c = reduced_index[it.col()];
      if (r < 0) continue;
      if (c >= 0)
        trip.emplace_back(r, c, it.value());
      else
        red.b(r) -= it.value() * red.prescribed(it.col());
    }
  red.A.resize(nf, nf);
  red.A.setFromTriplets(trip.begin(), trip.end());
  red.A.makeCompressed();
  return red;
}

Vector solve(const SparseMatrix& A, const Vector& b, SolveInfo* info) {
  if (A.rows() != A.cols() || A.rows() != b.size()) throw SolverError("system dimensions do not match");
  if (A.rows() == 0) {
    if (info) info->relative_residual = 0.0;
    return Vector(0);
  }
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw SolverError("sparse LDL^T factorization failed");
  const Vector d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (!(d.minCoeff() > 1e-13 * dmax))
    throw SolverError("matrix is not numerically positive definite (spurious modes or missing Dirichlet data)");
  Vector x = ldlt.solve(b);
  const double bn = b.norm() > 0.0 ? b.norm() : 1.0;
  double res = (A * x - b).norm() / bn;
  // iterative refinement
  for (int it = 0; it < 3 && res > 1e-15; ++it) {
    const Vector dx = ldlt.solve(b - A * x);
    const Vector xn = x + dx;
    const double rn = (A * xn - b).norm() / bn;
    if (!(rn < res)) break;
    x = xn;
    res = rn;
  }
  if (info) info->relative_residual = res;
  if (!(res <= 1e-10)) {
    std::ostringstream msg;
    msg << "relative residual " << res << " exceeds 1e-10";
    throw SolverError(msg.str());
  }
  return x;
}

Vector solve_reduced(const ReducedSystem& red, SolveInfo* info) {
  const Vector xf = solve(red.A, red.b, info);
  Vector u = red.prescribed;
  for (std::size_t i = 0; i < red.free_dofs.size(); ++i) u(red.free_dofs[i]) = xf(static_cast<Eigen::Index>(i));
  return u;
}

ErrorNorms error_norms(const Vector& solution, const AssembledSystem& system, const DofMap& dofmap,
                       const MaterialMatrix& material, const AnalyticField& exact, int extra_degree) {
  if (solution.size() != dofmap.num_dofs()) throw InvalidParameterError("solution length differs from the DOF count");
  ErrorNorms out;
  for (int s = 0; s < dofmap.num_sites; ++s) {
    const Point2 u = exact.displacement(dofmap.site_positions[s]);
    const Point2 uh(solution(2 * s), solution(2 * s + 1));
    out.linf = std::max(out.linf, (u - uh).norm());
  }
  const int pdeg = exact.polynomial_degree;
  const std::size_t nc = system.elements.size();
  std::vector<double> l2(nc, 0.0), en(nc, 0.0);
  parallel_for(nc, [&](std::size_t c) {
    const auto& em = system.elements[c];
    const auto& geom = system.geometry[c];
    const auto& P = em.projectors;
    const auto dofs = dofmap.cell_dofs(c);
    Vector d(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) d(i) = solution(dofs[i]);

    const VectorMonomialBasis vb(P.k, P.frame);
    const Vector cu = P.Pi_S * d;
    const QuadratureRule r2 = sbc_polygon_rule(geom, pdeg >= 0 ? 2 * std::max(P.k, pdeg) : 2 * P.k + 2 + extra_degree);
    double e2 = 0.0;
    for (std::size_t q = 0; q < r2.size(); ++q) {
      const Point2 diff = exact.displacement(r2.points[q]) - vb.eval(r2.points[q]) * cu;
      e2 += r2.weights[q] * diff.squaredNorm();
    }
    l2[c] = e2;

    if (exact.strain) {
      const MatrixMonomialBasis mb(P.ell, P.frame);
      const Vector cs = P.Pi * d;
      const QuadratureRule re = sbc_polygon_rule(geom, pdeg >= 0 ? 2 * std::max(P.ell, pdeg - 1) : 2 * P.ell + 2 + extra_degree);
      double ee = 0.0;
      for (std::size_t q = 0; q < re.size(); ++q) {
        const Eigen::Vector3d diff = exact.strain(re.points[q]) - mb.eval(re.points[q]) * cs;
        ee += re.weights[q] * diff.dot(material.C * diff);
      }
      en[c] = ee;
    }
  });
  double s2 = 0.0, se = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    s2 += l2[c];
    se += en[c];
  }
  // nonconvex rules carry negative weights; clamp roundoff below zero
  out.l2 = std::sqrt(std::max(0.0, s2));
  out.energy = std::sqrt(std::max(0.0, se));
  return out;
}

std::vector<double> convergence_rate(const std::vector<double>& errors, const std::vector<double>& dof_counts) {
  if (errors.size() != dof_counts.size()) throw InvalidParameterError("convergence_rate: length mismatch");
  if (errors.size() < 2) throw InvalidParameterError("convergence_rate: needs at least two levels");
  std::vector<double> rates;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(dof_counts[i + 1] > dof_counts[i])) throw InvalidParameterError("convergence_rate: DOF counts must increase");
    const double e1 = errors[i], e2 = errors[i + 1];
    if (!(e1 > 0.0 && e2 > 0.0) || !std::isfinite(e1) || !std::isfinite(e2)) {
      rates.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    rates.push_back(-std::log(e2 / e1) / std::log(std::sqrt(dof_counts[i + 1]) / std::sqrt(dof_counts[i])));
  }
  return rates;
}

Vector interpolate(const DofMap& dofmap, const VectorField& u) {
  Vector v(dofmap.num_dofs());
  for (int s = 0; s < dofmap.num_sites; ++s) {
    const Point2 p = u(dofmap.site_positions[s]);
    v(2 * s) = p.x();
    v(2 * s + 1) = p.y();
  }
  return v;
}

Solution solve_bvp(const BoundaryValueProblem& bvp) {
  Solution sol;
  sol.dofmap = build_dof_map(*bvp.mesh, bvp.k);
  sol.system = assemble(bvp, sol.dofmap);
  const ReducedSystem red = apply_dirichlet(sol.system, sol.dofmap, bvp.conditions);
  sol.u = solve_reduced(red, &sol.info);
  return sol;
}

}  // namespace vemsf
