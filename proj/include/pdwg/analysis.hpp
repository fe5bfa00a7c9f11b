#pragma once

#include "pdwg/solver.hpp"

#include <optional>
#include <vector>

namespace pdwg {

struct ErrorReport {
  double err_u = 0.0;   // ||u_h - I_h u||
  double err_l0 = 0.0;  // ||lambda_0||
  double err_lb = 0.0;  // (sum_e h_T ||lambda_b||_e^2)^{1/2}
  std::optional<double> triple_mh;
  std::optional<double> triple_wh;
};

/// Exact solution sampled at element centroids (P_0 coefficients).
PrimalFunction nodal_interpolant(const ScalarField& exact_u, const Mesh& mesh, const DofMap& dofs);

/// Multiplier norms. Each edge is counted once with h_T of its lower-numbered element.
double lambda0_norm(const WeakFunction& lambda, const Mesh& mesh);
double lambdab_norm(const WeakFunction& lambda, const Mesh& mesh);

ErrorReport error_norms(const Solution& solution, const BoundCoefficients& coeffs, const Mesh& mesh);

/// (sum_T h_T^{-1} ||lambda_0 - lambda_b||_{dT}^2 + tau ||beta . grad lambda_0 - c lambda_0||_T^2)^{1/2}
double triple_norm_wh(const WeakFunction& lambda, const BoundCoefficients& coeffs, const Mesh& mesh);

/// (sum_T h_T^2 ||div(beta v) + c v||_T^2 + sum_{e not on outflow} h_T ||[beta v . n]||_e^2)^{1/2};
/// on inflow edges the jump is beta v . n itself.
double triple_norm_mh(const PrimalFunction& v, const DofMap& dofs, const BoundCoefficients& coeffs,
                      const Mesh& mesh, const BoundaryClassification& boundary);

struct ConservationReport {
  /// r_T = int_{dT} F_h . n + int_T c u~_h - int_T f
  std::vector<double> element_residuals;
  /// Per edge, max over edge basis functions chi of |<F_1 . n_1 + F_2 . n_2, chi>_e| (0 on boundary).
  std::vector<double> flux_jumps;
  double max_residual = 0.0;
  double max_flux_jump = 0.0;
  /// max(1, max |f|) over quadrature nodes.
  double f_scale = 1.0;
};

/// Conservative solution u~_h = u_h + tau (beta . grad lambda_0 - c lambda_0) and
/// numerical flux F_h = bbar u_h - h_T^{-1} (lambda_0 - lambda_b) n, where bbar
/// is the elementwise L2 projection of beta onto P_{k-1} (beta itself when beta
/// is piecewise constant).
ConservationReport conservation_report(const Solution& solution, const BoundCoefficients& coeffs,
                                       const Mesh& mesh);

/// log2(previous / current); throws on non-positive or non-finite input.
double convergence_order(double previous, double current);
std::vector<double> convergence_orders(const std::vector<double>& errors);

/// Vertex and edge-midpoint averages of u_h over incident elements.
struct NodalField {
  std::vector<Point> points;  // vertices, then edge midpoints
  std::vector<double> values;
};

NodalField postprocess_averages(const PrimalFunction& u, const DofMap& dofs, const Mesh& mesh);

}  // namespace pdwg
