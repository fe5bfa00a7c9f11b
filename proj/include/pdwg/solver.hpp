#pragma once

#include "pdwg/assembly.hpp"

#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace pdwg {

inline constexpr double kDefaultSolverTolerance = 1e-11;

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearSolveResult {
  Eigen::VectorXd x;
  /// ||Ax - b|| / ||b|| recomputed by an explicit product (absolute when b = 0).
  double relative_residual = 0.0;
  std::string method;
  int iterations = 0;
};

/// Solves a sparse symmetric (possibly indefinite) system to the requested
/// relative residual. Sparse LU first; preconditioned MINRES if LU fails.
/// Throws SolverError when neither path meets the tolerance.
LinearSolveResult solve_linear(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                               double tol = kDefaultSolverTolerance);

/// Diagonally scaled MINRES with a budget of 20 N iterations. Returns the
/// residual it reaches without throwing.
LinearSolveResult solve_minres(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                               double tol = kDefaultSolverTolerance);

struct Solution {
  WeakFunction lambda;
  PrimalFunction u;
  double relative_residual = 0.0;
  std::string method;
  int iterations = 0;
};

Solution solve(const SaddleSystem& system, double tol = kDefaultSolverTolerance);

double relative_residual(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& rhs);

}  // namespace pdwg
