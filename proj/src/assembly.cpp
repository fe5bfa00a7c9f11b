#include "pdwg/assembly.hpp"

#include <ostream>
#include <stdexcept>

namespace pdwg {

Eigen::SparseMatrix<double> SaddleSystem::stabilizer_block() const {
  const int n = dofs->num_lambda();
  return matrix.topLeftCorner(n, n);
}

double SaddleSystem::stabilizer_form(const Eigen::VectorXd& lambda) const {
  const Eigen::SparseMatrix<double> s = stabilizer_block();
  return lambda.dot(s * lambda);
}

Eigen::MatrixXd local_stabilizer(const ElementContext& ctx, const BoundCoefficients& coeffs,
                                 int element) {
  const int nj = ctx.interior_basis.dimension();
  const int nb = ctx.trace_basis.dimension();
  const int nl = nj + 3 * nb;
  const double inv_h = 1.0 / ctx.geometry.diameter;
  const auto edge_rule = quad_edge<double>(kEdgeQuadDegree);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nl, nl);

  for (int i = 0; i < 3; ++i) {
    ctx.for_each_edge_point(i, edge_rule, [&](const Point& x, double t, double w) {
      Eigen::VectorXd jump = Eigen::VectorXd::Zero(nl);
      jump.head(nj) = ctx.interior_basis.values(x);
      jump.segment(nj + i * nb, nb) = -ctx.trace_basis.values(t);
      s.noalias() += (w * inv_h) * jump * jump.transpose();
    });
  }

  const double tau = coeffs.tau();
  if (tau > 0.0) {
    const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(nj, nj);
    ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
      const Eigen::VectorXd adjoint = ctx.interior_basis.gradients(x) * coeffs.beta(x, element) -
                                      coeffs.c(x) * ctx.interior_basis.values(x);
      block.noalias() += (w * tau) * adjoint * adjoint.transpose();
    });
    s.topLeftCorner(nj, nj) += block;
  }
  return s;
}

Eigen::MatrixXd local_b_form(const ElementContext& ctx, const WeakGradientOp& grad,
                             const BoundCoefficients& coeffs, int element) {
  const int nj = ctx.interior_basis.dimension();
  const int nr = ctx.primal_basis.dimension();
  const int nl = static_cast<int>(grad.matrix.cols());
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nr, nl);

  ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
    const Eigen::VectorXd v = ctx.primal_basis.values(x);
    const Point beta = coeffs.beta(x, element);
    // beta . grad_w sigma - c sigma_0 as a row over the local layout
    Eigen::RowVectorXd row =
        v.transpose() * (beta.x() * grad.matrix.topRows(nr) + beta.y() * grad.matrix.bottomRows(nr));
    row.head(nj) -= coeffs.c(x) * ctx.interior_basis.values(x).transpose();
    b.noalias() += w * v * row;
  });
  return b;
}

Eigen::VectorXd local_load(const ElementContext& ctx, const BoundCoefficients& coeffs, int element) {
  const int nj = ctx.interior_basis.dimension();
  const int nb = ctx.trace_basis.dimension();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nj + 3 * nb);
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
    out.head(nj) -= w * coeffs.f(x, element) * ctx.interior_basis.values(x);
  });
  return out;
}

Eigen::VectorXd local_inflow(const Mesh& mesh, int edge, int degree, const BoundCoefficients& coeffs) {
  const Edge& e = mesh.edges()[edge];
  if (!e.is_boundary()) throw std::invalid_argument("local_inflow: interior edge");
  const EdgeBasis<double> basis(degree);
  const Segment<double> seg = edge_segment(mesh, edge);
  const Point n = mesh.edge_normal(edge, e.left);
  const auto rule = quad_edge<double>(kEdgeQuadDegree);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.dimension());
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const double t = rule.points(q, 0);
    const Point x = seg.at(t);
    const double w = rule.weights(q) * seg.length() / 2.0;
    out += w * coeffs.beta(x, e.left).dot(n) * coeffs.g(x) * basis.values(t);
  }
  return out;
}

SaddleSystem assemble(const Mesh& mesh, const DofMap& dofs, const BoundCoefficients& coeffs,
                      const BoundaryClassification& boundary) {
  if (&dofs.mesh() != &mesh) throw std::invalid_argument("assemble: DofMap built for another mesh");
  if (boundary.is_inflow.size() != static_cast<std::size_t>(mesh.num_edges()))
    throw std::invalid_argument("assemble: boundary classification does not match mesh");

  const int k = dofs.k();
  const int j = dofs.j();
  const int nr = dofs.primal_dim();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_elements()) *
                   (dofs.local_lambda_dim() * (dofs.local_lambda_dim() + 2 * nr)));

  SaddleSystem sys;
  sys.dofs = &dofs;
  sys.rhs = Eigen::VectorXd::Zero(dofs.size());

  const std::vector<WeakGradientOp> grads = weak_gradients(mesh, k, j);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, k, j);
    const auto local = dofs.local_lambda_dofs(t);
    const Eigen::MatrixXd s = local_stabilizer(ctx, coeffs, t);
    const Eigen::MatrixXd b = local_b_form(ctx, grads[t], coeffs, t);
    const Eigen::VectorXd load = local_load(ctx, coeffs, t);
    const int nl = static_cast<int>(local.size());

    for (int a = 0; a < nl; ++a) {
      if (local[a] == kConstrained) continue;
      sys.rhs(local[a]) += load(a);
      for (int c = 0; c < nl; ++c)
        if (local[c] != kConstrained && s(a, c) != 0.0) triplets.emplace_back(local[a], local[c], s(a, c));
      for (int p = 0; p < nr; ++p) {
        const int row = dofs.primal_offset(t) + p;
        if (b(p, a) == 0.0) continue;
        triplets.emplace_back(row, local[a], b(p, a));
        triplets.emplace_back(local[a], row, b(p, a));
      }
    }
  }

  for (int e : boundary.inflow_edges) {
    const int off = dofs.trace_offset(e);
    if (off == kConstrained) continue;
    sys.rhs.segment(off, dofs.trace_dim()) += local_inflow(mesh, e, j, coeffs);
  }

  sys.matrix.resize(dofs.size(), dofs.size());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<double>& matrix) {
  std::size_t nnz = 0;
  for (int col = 0; col < matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, col); it; ++it)
      if (it.row() >= it.col()) ++nnz;
  const auto old_precision = os.precision(17);
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << matrix.rows() << ' ' << matrix.cols() << ' ' << nnz << '\n';
  for (int col = 0; col < matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, col); it; ++it)
      if (it.row() >= it.col()) os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
  os.precision(old_precision);
}

}  // namespace pdwg
