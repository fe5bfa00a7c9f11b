#include "pdwg/weakspace.hpp"

#include <cmath>
#include <stdexcept>

namespace pdwg {

DofMap::DofMap(const Mesh& mesh, int k, int j, const BoundaryClassification& boundary)
    : mesh_(&mesh), k_(k), j_(j) {
  if (k != 1) throw std::invalid_argument("DofMap: only k = 1 is supported");
  if (j != k - 1 && j != k) throw std::invalid_argument("DofMap: j must be k-1 or k");
  if (boundary.is_outflow.size() != static_cast<std::size_t>(mesh.num_edges()))
    throw std::invalid_argument("DofMap: boundary classification does not match mesh");

  int next = mesh.num_elements() * interior_dim();
  trace_offset_.assign(static_cast<std::size_t>(mesh.num_edges()), kConstrained);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (boundary.is_outflow[e]) {
      ++num_constrained_edges_;
      continue;
    }
    trace_offset_[e] = next;
    next += trace_dim();
  }
  num_lambda_ = next;
  num_primal_ = mesh.num_elements() * primal_dim();
}

std::vector<int> DofMap::local_lambda_dofs(int element) const {
  std::vector<int> dofs;
  dofs.reserve(static_cast<std::size_t>(local_lambda_dim()));
  for (int a = 0; a < interior_dim(); ++a) dofs.push_back(interior_offset(element) + a);
  for (int e : mesh_->element_edges()[element]) {
    const int off = trace_offset(e);
    for (int c = 0; c < trace_dim(); ++c) dofs.push_back(off == kConstrained ? kConstrained : off + c);
  }
  return dofs;
}

WeakFunction::WeakFunction(const DofMap& dofs)
    : dofs_(&dofs), coeffs_(Eigen::VectorXd::Zero(dofs.num_lambda())) {}

WeakFunction::WeakFunction(const DofMap& dofs, Eigen::VectorXd coefficients)
    : dofs_(&dofs), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != dofs.num_lambda())
    throw std::invalid_argument("WeakFunction: coefficient count mismatch");
}

Eigen::VectorXd WeakFunction::interior(int element) const {
  return coeffs_.segment(dofs_->interior_offset(element), dofs_->interior_dim());
}

Eigen::VectorXd WeakFunction::trace(int edge) const {
  const int off = dofs_->trace_offset(edge);
  if (off == kConstrained) return Eigen::VectorXd::Zero(dofs_->trace_dim());
  return coeffs_.segment(off, dofs_->trace_dim());
}

Eigen::VectorXd WeakFunction::local(int element) const {
  const auto dofs = dofs_->local_lambda_dofs(element);
  Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
  for (std::size_t a = 0; a < dofs.size(); ++a)
    out(static_cast<Eigen::Index>(a)) = dofs[a] == kConstrained ? 0.0 : coeffs_(dofs[a]);
  return out;
}

PrimalFunction::PrimalFunction(const DofMap& dofs)
    : dofs_(&dofs), coeffs_(Eigen::VectorXd::Zero(dofs.num_primal())) {}

PrimalFunction::PrimalFunction(const DofMap& dofs, Eigen::VectorXd coefficients)
    : dofs_(&dofs), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != dofs.num_primal())
    throw std::invalid_argument("PrimalFunction: coefficient count mismatch");
}

Eigen::VectorXd PrimalFunction::element(int t) const {
  return coeffs_.segment(t * dofs_->primal_dim(), dofs_->primal_dim());
}

ElementContext::ElementContext(const Mesh& mesh, int element, int k, int j)
    : geometry(element_geometry(mesh, element)),
      interior_basis(make_tri_basis<double>(j, geometry)),
      primal_basis(make_tri_basis<double>(k - 1, geometry)),
      trace_basis(j),
      edges(mesh.element_edges()[element]),
      segments{edge_segment(mesh, edges[0]), edge_segment(mesh, edges[1]),
               edge_segment(mesh, edges[2])} {}

Point WeakGradientOp::evaluate(const ElementContext& ctx, const Eigen::VectorXd& local,
                               const Point& x) const {
  const Eigen::VectorXd coeffs = matrix * local;
  const Eigen::VectorXd m = ctx.primal_basis.values(x);
  return {m.dot(coeffs.head(primal_dim)), m.dot(coeffs.tail(primal_dim))};
}

WeakGradientOp weak_gradient_local(const ElementContext& ctx) {
  const int nr = ctx.primal_basis.dimension();
  const int nj = ctx.interior_basis.dimension();
  const int nb = ctx.trace_basis.dimension();
  const int nl = nj + 3 * nb;
  const auto tri_rule = quad_triangle<double>(kTriangleQuadDegree);
  const auto edge_rule = quad_edge<double>(kEdgeQuadDegree);

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nr, nr);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * nr, nl);

  ctx.for_each_point(tri_rule, [&](const Point& x, double w) {
    const Eigen::VectorXd m = ctx.primal_basis.values(x);
    const auto dm = ctx.primal_basis.gradients(x);
    const Eigen::VectorXd phi = ctx.interior_basis.values(x);
    mass.noalias() += w * m * m.transpose();
    // -(v_0, div psi) with psi = m_b e_x and psi = m_b e_y
    rhs.block(0, 0, nr, nj).noalias() -= w * dm.col(0) * phi.transpose();
    rhs.block(nr, 0, nr, nj).noalias() -= w * dm.col(1) * phi.transpose();
  });

  for (int i = 0; i < 3; ++i) {
    const Point n = ctx.geometry.normals[i];
    const int col = nj + i * nb;
    ctx.for_each_edge_point(i, edge_rule, [&](const Point& x, double t, double w) {
      const Eigen::VectorXd m = ctx.primal_basis.values(x);
      const Eigen::VectorXd chi = ctx.trace_basis.values(t);
      rhs.block(0, col, nr, nb).noalias() += w * n.x() * m * chi.transpose();
      rhs.block(nr, col, nr, nb).noalias() += w * n.y() * m * chi.transpose();
    });
  }

  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success || !(ctx.geometry.area > 0.0))
    throw std::runtime_error("weak_gradient_local: singular mass matrix (degenerate element)");

  WeakGradientOp op;
  op.primal_dim = nr;
  op.matrix.resize(2 * nr, nl);
  op.matrix.topRows(nr) = llt.solve(rhs.topRows(nr));
  op.matrix.bottomRows(nr) = llt.solve(rhs.bottomRows(nr));
  return op;
}

std::vector<WeakGradientOp> weak_gradients(const Mesh& mesh, int k, int j) {
  std::vector<WeakGradientOp> ops;
  ops.reserve(static_cast<std::size_t>(mesh.num_elements()));
  for (int t = 0; t < mesh.num_elements(); ++t)
    ops.push_back(weak_gradient_local(ElementContext(mesh, t, k, j)));
  return ops;
}

Eigen::VectorXd project_weak(const ElementContext& ctx,
                             const std::function<double(const Point&)>& w) {
  const int nj = ctx.interior_basis.dimension();
  const int nb = ctx.trace_basis.dimension();
  Eigen::VectorXd local(nj + 3 * nb);
  local.head(nj) = project_element<double>(w, ctx.interior_basis.degree(), ctx.geometry);
  for (int i = 0; i < 3; ++i)
    local.segment(nj + i * nb, nb) = project_edge<double>(w, ctx.trace_basis.degree(), ctx.segments[i]);
  return local;
}

double commutativity_check(const std::function<double(const Point&)>& w,
                           const std::function<Point(const Point&)>& grad_w, const Mesh& mesh,
                           int k, int j) {
  if (j < k - 1) throw std::invalid_argument("commutativity_check: requires j >= k-1");
  double worst = 0.0;
  const auto rule = quad_triangle<double>(kMaxQuadratureDegree);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, k, j);
    const WeakGradientOp op = weak_gradient_local(ctx);
    const Eigen::VectorXd lhs = op.matrix * project_weak(ctx, w);

    const int r = k - 1;
    const int nr = ctx.primal_basis.dimension();
    Eigen::VectorXd rhs(2 * nr);
    rhs.head(nr) = project_element<double>([&](const Point& x) { return grad_w(x).x(); }, r,
                                           ctx.geometry, kMaxQuadratureDegree);
    rhs.tail(nr) = project_element<double>([&](const Point& x) { return grad_w(x).y(); }, r,
                                           ctx.geometry, kMaxQuadratureDegree);

    const Eigen::MatrixXd mass = element_mass_matrix<double>(ctx.primal_basis, ctx.geometry, rule);
    const Eigen::VectorXd d = lhs - rhs;
    const double err2 = d.head(nr).dot(mass * d.head(nr)) + d.tail(nr).dot(mass * d.tail(nr));
    worst = std::max(worst, std::sqrt(std::max(err2, 0.0)));
  }
  return worst;
}

}  // namespace pdwg
