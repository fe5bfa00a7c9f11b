#pragma once

#include "pdwg/fields.hpp"
#include "pdwg/weakspace.hpp"

#include <Eigen/Sparse>

#include <iosfwd>
#include <string>

namespace pdwg {

/// Symmetric indefinite system [S B^T; B 0] over (lambda, u) with right-hand
/// side [F; 0]. Outflow trace coefficients are eliminated.
struct SaddleSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  const DofMap* dofs = nullptr;

  int size() const { return static_cast<int>(rhs.size()); }
  /// Top-left multiplier block S.
  Eigen::SparseMatrix<double> stabilizer_block() const;
  /// s(lambda, lambda) through the assembled S block.
  double stabilizer_form(const Eigen::VectorXd& lambda) const;
};

/// s_T over the local multiplier layout:
/// h_T^{-1} <rho_0 - rho_b, sigma_0 - sigma_b>_{dT} + tau (L rho_0, L sigma_0)_T
/// with L sigma = beta . grad sigma - c sigma.
Eigen::MatrixXd local_stabilizer(const ElementContext& ctx, const BoundCoefficients& coeffs,
                                 int element);

/// b_T(v, sigma) = (v, beta . grad_w sigma - c sigma_0)_T as a
/// (dim P_{k-1}) x local_lambda_dim matrix.
Eigen::MatrixXd local_b_form(const ElementContext& ctx, const WeakGradientOp& grad,
                             const BoundCoefficients& coeffs, int element);

/// -(f, sigma_0)_T over the local multiplier layout (trace slots are zero).
Eigen::VectorXd local_load(const ElementContext& ctx, const BoundCoefficients& coeffs, int element);

/// <sigma_b, beta . n g>_e for an inflow boundary edge, in the edge basis.
Eigen::VectorXd local_inflow(const Mesh& mesh, int edge, int degree, const BoundCoefficients& coeffs);

SaddleSystem assemble(const Mesh& mesh, const DofMap& dofs, const BoundCoefficients& coeffs,
                      const BoundaryClassification& boundary);

/// Writes the lower triangle in MatrixMarket coordinate symmetric format.
void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<double>& matrix);

}  // namespace pdwg
