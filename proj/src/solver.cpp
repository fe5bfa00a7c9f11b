#include "pdwg/solver.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <sstream>

namespace pdwg {

double relative_residual(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& rhs) {
  const double r = (matrix * x - rhs).norm();
  const double b = rhs.norm();
  return b > 0.0 ? r / b : r;
}

namespace {

// Diagonal scaling for MINRES: |A_ii| on rows with a nonzero diagonal and the
// diagonal of the approximate Schur complement B diag(S)^{-1} B^T elsewhere.
Eigen::VectorXd block_scaling(const Eigen::SparseMatrix<double>& a) {
  const Eigen::VectorXd diag = a.diagonal();
  Eigen::VectorXd schur = Eigen::VectorXd::Zero(a.rows());
  for (int col = 0; col < a.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it)
      if (diag(it.row()) == 0.0 && diag(col) != 0.0)
        schur(it.row()) += it.value() * it.value() / std::abs(diag(col));
  Eigen::VectorXd d(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double v = diag(i) != 0.0 ? std::abs(diag(i)) : schur(i);
    d(i) = v > 0.0 ? std::sqrt(v) : 1.0;
  }
  return d;
}

void check_arguments(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw std::invalid_argument("solve: tolerance must lie in [1e-14, 1e-6]");
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size())
    throw std::invalid_argument("solve: dimension mismatch");
}

}  // namespace

LinearSolveResult solve_minres(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                               double tol) {
  check_arguments(matrix, rhs, tol);
  const Eigen::VectorXd dinv = block_scaling(matrix).cwiseInverse();
  const Eigen::SparseMatrix<double> scaled = dinv.asDiagonal() * matrix * dinv.asDiagonal();
  Eigen::MINRES<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper, Eigen::IdentityPreconditioner>
      minres;
  minres.setMaxIterations(20 * static_cast<Eigen::Index>(matrix.rows()));
  minres.setTolerance(tol / 10.0);
  minres.compute(scaled);
  const Eigen::VectorXd y = minres.solve(dinv.cwiseProduct(rhs));

  LinearSolveResult result;
  result.x = dinv.cwiseProduct(y);
  result.relative_residual = relative_residual(matrix, result.x, rhs);
  result.method = "minres";
  result.iterations = static_cast<int>(minres.iterations());
  return result;
}

LinearSolveResult solve_linear(const Eigen::SparseMatrix<double>& matrix, const Eigen::VectorXd& rhs,
                               double tol) {
  check_arguments(matrix, rhs, tol);
  LinearSolveResult result;
  if (rhs.norm() == 0.0) {
    result.x = Eigen::VectorXd::Zero(rhs.size());
    result.method = "trivial";
    return result;
  }

  std::ostringstream diagnostics;
  {
    Eigen::SparseMatrix<double> a = matrix;
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() == Eigen::Success) {
      result.x = lu.solve(rhs);
      result.relative_residual = relative_residual(matrix, result.x, rhs);
      result.method = "sparse-lu";
      if (result.relative_residual <= tol) return result;
      diagnostics << "sparse LU residual " << result.relative_residual << "; ";
    } else {
      diagnostics << "sparse LU failed: " << lu.lastErrorMessage() << "; ";
    }
  }

  result = solve_minres(matrix, rhs, tol);
  if (result.relative_residual <= tol) return result;
  diagnostics << "MINRES residual " << result.relative_residual << " after " << result.iterations
              << " iterations";
  std::ostringstream msg;
  msg << "solve: tolerance " << tol << " not met (" << diagnostics.str() << ")";
  throw SolverError(msg.str());
}

Solution solve(const SaddleSystem& system, double tol) {
  const DofMap& dofs = *system.dofs;
  LinearSolveResult r = solve_linear(system.matrix, system.rhs, tol);
  return Solution{WeakFunction(dofs, r.x.head(dofs.num_lambda())),
                  PrimalFunction(dofs, r.x.tail(dofs.num_primal())), r.relative_residual,
                  std::move(r.method), r.iterations};
}

}  // namespace pdwg
