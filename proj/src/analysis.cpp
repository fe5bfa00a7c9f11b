#include "pdwg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdwg {

PrimalFunction nodal_interpolant(const ScalarField& exact_u, const Mesh& mesh, const DofMap& dofs) {
  if (dofs.primal_dim() != 1) throw std::invalid_argument("nodal_interpolant: requires k = 1");
  PrimalFunction out(dofs);
  for (int t = 0; t < mesh.num_elements(); ++t)
    out.coefficients()(t) = exact_u(element_geometry(mesh, t).centroid);
  return out;
}

double lambda0_norm(const WeakFunction& lambda, const Mesh& mesh) {
  const DofMap& dofs = lambda.dofs();
  const auto rule = quad_triangle<double>(kTriangleQuadDegree);
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto g = element_geometry(mesh, t);
    const auto basis = make_tri_basis<double>(dofs.j(), g);
    const Eigen::VectorXd c = lambda.interior(t);
    sum += c.dot(element_mass_matrix<double>(basis, g, rule) * c);
  }
  return std::sqrt(std::max(sum, 0.0));
}

double lambdab_norm(const WeakFunction& lambda, const Mesh& mesh) {
  const DofMap& dofs = lambda.dofs();
  const EdgeBasis<double> basis(dofs.j());
  const auto rule = quad_edge<double>(kEdgeQuadDegree);
  double sum = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const int owner = edge.is_boundary() ? edge.left : std::min(edge.left, edge.right);
    const double h = element_geometry(mesh, owner).diameter;
    const Eigen::VectorXd c = lambda.trace(e);
    sum += h * c.dot(edge_mass_matrix<double>(basis, edge_segment(mesh, e), rule) * c);
  }
  return std::sqrt(std::max(sum, 0.0));
}

ErrorReport error_norms(const Solution& solution, const BoundCoefficients& coeffs, const Mesh& mesh) {
  const auto& exact = coeffs.spec().exact_u;
  if (!exact) throw std::invalid_argument("error_norms: problem has no exact solution");
  const DofMap& dofs = solution.lambda.dofs();
  const PrimalFunction interp = nodal_interpolant(*exact, mesh, dofs);

  ErrorReport report;
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const double diff = solution.u.coefficients()(t) - interp.coefficients()(t);
    sum += element_geometry(mesh, t).area * diff * diff;
  }
  report.err_u = std::sqrt(sum);
  report.err_l0 = lambda0_norm(solution.lambda, mesh);
  report.err_lb = lambdab_norm(solution.lambda, mesh);
  return report;
}

double triple_norm_wh(const WeakFunction& lambda, const BoundCoefficients& coeffs, const Mesh& mesh) {
  const DofMap& dofs = lambda.dofs();
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  const auto edge_rule = quad_edge<double>(kEdgeQuadDegree);
  const double tau = coeffs.tau();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, dofs.k(), dofs.j());
    const Eigen::VectorXd l0 = lambda.interior(t);
    const double inv_h = 1.0 / ctx.geometry.diameter;
    for (int i = 0; i < 3; ++i) {
      const Eigen::VectorXd lb = lambda.trace(ctx.edges[i]);
      ctx.for_each_edge_point(i, edge_rule, [&](const Point& x, double s, double w) {
        const double jump = ctx.interior_basis.values(x).dot(l0) - ctx.trace_basis.values(s).dot(lb);
        sum += w * inv_h * jump * jump;
      });
    }
    if (tau > 0.0) {
      ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
        const Point grad = ctx.interior_basis.gradients(x).transpose() * l0;
        const double r = coeffs.beta(x, t).dot(grad) - coeffs.c(x) * ctx.interior_basis.values(x).dot(l0);
        sum += w * tau * r * r;
      });
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double triple_norm_mh(const PrimalFunction& v, const DofMap& dofs, const BoundCoefficients& coeffs,
                      const Mesh& mesh, const BoundaryClassification& boundary) {
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  const auto edge_rule = quad_edge<double>(kEdgeQuadDegree);
  const auto& beta_field = coeffs.spec().beta;
  auto has_divergence = [](const VectorField& f) { return static_cast<bool>(f.divergence); };
  if (!has_divergence(beta_field.otherwise) ||
      !std::all_of(beta_field.branches.begin(), beta_field.branches.end(),
                   [&](const auto& b) { return has_divergence(b.second); }))
    throw std::invalid_argument("triple_norm_mh: convection divergence not available");

  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, dofs.k(), dofs.j());
    const Eigen::VectorXd vt = v.element(t);
    const double h = ctx.geometry.diameter;
    ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
      const double val = ctx.primal_basis.values(x).dot(vt);
      const Point grad = ctx.primal_basis.gradients(x).transpose() * vt;
      const double r = coeffs.div_beta(x, t) * val + coeffs.beta(x, t).dot(grad) + coeffs.c(x) * val;
      sum += w * h * h * r * r;
    });
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (edge.is_boundary() && boundary.is_outflow[e]) continue;
    std::vector<int> sides{edge.left};
    if (!edge.is_boundary()) sides.push_back(edge.right);
    const int owner = *std::min_element(sides.begin(), sides.end());
    const double h = element_geometry(mesh, owner).diameter;
    const Segment<double> seg = edge_segment(mesh, e);
    for (Eigen::Index q = 0; q < edge_rule.size(); ++q) {
      const Point x = seg.at(edge_rule.points(q, 0));
      const double w = edge_rule.weights(q) * seg.length() / 2.0;
      double jump = 0.0;
      for (int t : sides) {
        const auto basis = make_tri_basis<double>(dofs.k() - 1, element_geometry(mesh, t));
        jump += coeffs.beta(x, t).dot(mesh.edge_normal(e, t)) * basis.values(x).dot(v.element(t));
      }
      sum += w * h * jump * jump;
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

ConservationReport conservation_report(const Solution& solution, const BoundCoefficients& coeffs,
                                       const Mesh& mesh) {
  const DofMap& dofs = solution.lambda.dofs();
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  const auto edge_rule = quad_edge<double>(kEdgeQuadDegree);
  const double tau = coeffs.tau();

  ConservationReport report;
  report.element_residuals.assign(static_cast<std::size_t>(mesh.num_elements()), 0.0);
  report.flux_jumps.assign(static_cast<std::size_t>(mesh.num_edges()), 0.0);
  // Per edge, accumulated <F_h . n, chi> from both sides.
  std::vector<Eigen::VectorXd> edge_flux(static_cast<std::size_t>(mesh.num_edges()),
                                         Eigen::VectorXd::Zero(dofs.trace_dim()));

  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, dofs.k(), dofs.j());
    const Eigen::VectorXd l0 = solution.lambda.interior(t);
    const Eigen::VectorXd ut = solution.u.element(t);
    const double inv_h = 1.0 / ctx.geometry.diameter;
    const int r = dofs.k() - 1;

    const Eigen::VectorXd bbar_x = project_element<double>(
        [&](const Point& x) { return coeffs.beta(x, t).x(); }, r, ctx.geometry, kTriangleQuadDegree);
    const Eigen::VectorXd bbar_y = project_element<double>(
        [&](const Point& x) { return coeffs.beta(x, t).y(); }, r, ctx.geometry, kTriangleQuadDegree);

    double residual = 0.0;
    ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
      const Eigen::VectorXd phi = ctx.interior_basis.values(x);
      const Point grad = ctx.interior_basis.gradients(x).transpose() * l0;
      const double c = coeffs.c(x);
      const double f = coeffs.f(x, t);
      const double u_tilde = ctx.primal_basis.values(x).dot(ut) +
                             tau * (coeffs.beta(x, t).dot(grad) - c * phi.dot(l0));
      residual += w * (c * u_tilde - f);
      report.f_scale = std::max(report.f_scale, std::abs(f));
    });

    for (int i = 0; i < 3; ++i) {
      const int e = ctx.edges[i];
      const Point n = ctx.geometry.normals[i];
      const Eigen::VectorXd lb = solution.lambda.trace(e);
      ctx.for_each_edge_point(i, edge_rule, [&](const Point& x, double s, double w) {
        const Eigen::VectorXd m = ctx.primal_basis.values(x);
        const Point bbar(m.dot(bbar_x), m.dot(bbar_y));
        const double flux = bbar.dot(n) * m.dot(ut) -
                            inv_h * (ctx.interior_basis.values(x).dot(l0) - ctx.trace_basis.values(s).dot(lb));
        residual += w * flux;
        edge_flux[e] += w * flux * ctx.trace_basis.values(s);
      });
    }
    report.element_residuals[t] = residual;
    report.max_residual = std::max(report.max_residual, std::abs(residual));
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edges()[e].is_boundary()) continue;
    report.flux_jumps[e] = edge_flux[e].cwiseAbs().maxCoeff();
    report.max_flux_jump = std::max(report.max_flux_jump, report.flux_jumps[e]);
  }
  return report;
}

double convergence_order(double previous, double current) {
  if (!(previous > 0.0) || !(current > 0.0) || !std::isfinite(previous) || !std::isfinite(current))
    throw std::invalid_argument("convergence_order: errors must be positive and finite");
  return std::log2(previous / current);
}

std::vector<double> convergence_orders(const std::vector<double>& errors) {
  if (errors.size() < 2) throw std::invalid_argument("convergence_orders: need at least two levels");
  std::vector<double> orders;
  for (std::size_t i = 1; i < errors.size(); ++i) orders.push_back(convergence_order(errors[i - 1], errors[i]));
  return orders;
}

NodalField postprocess_averages(const PrimalFunction& u, const DofMap& dofs, const Mesh& mesh) {
  if (dofs.k() != 1) throw std::invalid_argument("postprocess_averages: requires k = 1");
  const auto nv = static_cast<std::size_t>(mesh.num_vertices());
  std::vector<double> vsum(nv, 0.0);
  std::vector<int> vcount(nv, 0);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    for (int v : mesh.elements()[t]) {
      vsum[v] += u.coefficients()(t);
      ++vcount[v];
    }
  }
  NodalField field;
  for (std::size_t v = 0; v < nv; ++v) {
    field.points.push_back(mesh.vertex(static_cast<int>(v)));
    field.values.push_back(vcount[v] > 0 ? vsum[v] / vcount[v] : 0.0);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    double value = u.coefficients()(edge.left);
    if (!edge.is_boundary()) value = 0.5 * (value + u.coefficients()(edge.right));
    field.points.push_back(mesh.edge_midpoint(e));
    field.values.push_back(value);
  }
  return field;
}

}  // namespace pdwg
