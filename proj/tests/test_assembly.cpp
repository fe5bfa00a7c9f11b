#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

using namespace pdwg;
using namespace pdwg::test;

namespace {

/// Boundary classification with no constrained edges (every boundary edge inflow).
BoundaryClassification all_inflow(const Mesh& mesh) {
  BoundaryClassification b;
  const auto n = static_cast<std::size_t>(mesh.num_edges());
  b.is_inflow.assign(n, false);
  b.is_outflow.assign(n, false);
  b.outward_normal.assign(n, Point::Zero());
  b.beta_dot_n.assign(n, 0.0);
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (mesh.edges()[e].is_boundary()) {
      b.is_inflow[e] = true;
      b.inflow_edges.push_back(e);
    }
  return b;
}

/// Interpolates a global linear function into the multiplier space.
Eigen::VectorXd interpolate_lambda(const DofMap& dofs, const Mesh& mesh, const std::function<double(const Point&)>& f) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dofs.num_lambda());
  for (int t = 0; t < mesh.num_elements(); ++t)
    out.segment(dofs.interior_offset(t), dofs.interior_dim()) =
        project_element(f, dofs.j(), element_geometry(mesh, t));
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (!dofs.is_constrained(e))
      out.segment(dofs.trace_offset(e), dofs.trace_dim()) = project_edge(f, dofs.j(), edge_segment(mesh, e));
  return out;
}

}  // namespace

TEST(LocalStabilizer, ReferenceExamples) {
  const double oracle = (1.0 / 3 + std::sqrt(2.0) / 3) / std::sqrt(2.0);
  EXPECT_NEAR(oracle, 0.5690, 1e-4);
  const Mesh mesh = reference_mesh();
  for (double tau : {0.0, 1.0}) {
    const ProblemSpec spec = constant_problem(Point(1, 0), 0.0, tau);
    const BoundCoefficients coeffs(spec, mesh);
    const ElementContext ctx(mesh, 0, 1, 1);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(9);
    rho.head(3) = project_element([](const Point& x) { return x.x(); }, 1, ctx.geometry);
    const double s = rho.dot(local_stabilizer(ctx, coeffs, 0) * rho);
    EXPECT_NEAR(s, oracle + 0.5 * tau, 1e-13);
  }
}

TEST(LocalStabilizer, KernelOfTransportRelation) {
  const Mesh mesh = reference_mesh();
  const ProblemSpec spec = constant_problem(Point(1, 0), 0.0, 1.0);
  const BoundCoefficients coeffs(spec, mesh);
  const ElementContext ctx(mesh, 0, 1, 1);
  auto y = [](const Point& x) { return x.y(); };
  const Eigen::VectorXd rho = project_weak(ctx, y);
  EXPECT_NEAR(rho.dot(local_stabilizer(ctx, coeffs, 0) * rho), 0.0, 1e-14);
}

TEST(LocalBForm, ReferenceExamples) {
  const Mesh mesh = reference_mesh();
  const ElementContext ctx(mesh, 0, 1, 1);
  const WeakGradientOp grad = weak_gradient_local(ctx);
  Eigen::VectorXd hyp = Eigen::VectorXd::Zero(9);
  hyp(3 + 2) = 1.0;  // sigma_b = 1 on the hypotenuse, sigma_0 = 0
  Eigen::VectorXd ones = project_weak(ctx, [](const Point&) { return 1.0; });

  const BoundCoefficients up(constant_problem(Point(1, 1), 3.7, 1.0), mesh);
  EXPECT_NEAR((local_b_form(ctx, grad, up, 0) * hyp)(0), 2.0, 1e-13);
  const BoundCoefficients down(constant_problem(Point(1, -1), 3.7, 1.0), mesh);
  EXPECT_NEAR((local_b_form(ctx, grad, down, 0) * hyp)(0), 0.0, 1e-13);
  const BoundCoefficients react(constant_problem(Point(0.3, -2.0), 1.0, 1.0), mesh);
  EXPECT_NEAR((local_b_form(ctx, grad, react, 0) * ones)(0), -0.5, 1e-13);
}

TEST(LocalRhs, Examples) {
  const Mesh mesh = reference_mesh();
  const ElementContext ctx(mesh, 0, 1, 1);
  const Eigen::VectorXd ones = project_weak(ctx, [](const Point&) { return 1.0; });

  ProblemSpec f1 = constant_problem(Point(1, -1), 0.0, 1.0);
  f1.f = constant_field(1.0);
  EXPECT_NEAR(local_load(ctx, BoundCoefficients(f1, mesh), 0).dot(ones), -0.5, 1e-14);
  ProblemSpec f0 = f1;
  f0.f = constant_field(0.0);
  EXPECT_EQ(local_load(ctx, BoundCoefficients(f0, mesh), 0).norm(), 0.0);

  const Mesh square = build_mesh(DomainTag::UnitSquare, 0);
  const BoundCoefficients coeffs(constant_problem(Point(1, -1), 1.0, 1.0), square);
  int found = 0;
  for (int e = 0; e < square.num_edges(); ++e) {
    if ((square.edge_midpoint(e) - Point(0, 0.5)).norm() > 1e-14) continue;
    const Eigen::VectorXd v = local_inflow(square, e, 1, coeffs);
    EXPECT_NEAR(v(0), -1.0, 1e-14);
    EXPECT_NEAR(v(1), 0.0, 1e-14);
    ++found;
  }
  EXPECT_EQ(found, 1);
}

TEST(Assemble, SymmetricWithZeroPrimalBlock) {
  for (DomainTag tag : {DomainTag::UnitSquare, DomainTag::LShape, DomainTag::CrackedSquare}) {
    for (int level = 0; level <= 3; ++level) {
      ProblemSpec spec = constant_problem(Point(1, -1), 1.0, 1.0, sin_x_cos_y());
      if (tag == DomainTag::CrackedSquare) spec.beta = rotation(0.0, 0.0);
      const auto s = make_setup(spec, tag, level);
      const SaddleSystem sys = s->system();
      ASSERT_EQ(sys.size(), s->dofs.size());
      const Eigen::SparseMatrix<double> diff = sys.matrix - Eigen::SparseMatrix<double>(sys.matrix.transpose());
      double asym = 0.0;
      for (int k = 0; k < diff.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it) asym = std::max(asym, std::abs(it.value()));
      EXPECT_LE(asym, 1e-13);

      const int nl = s->dofs.num_lambda();
      for (int k = 0; k < sys.matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, k); it; ++it)
          EXPECT_FALSE(it.row() >= nl && it.col() >= nl) << "(u,u) entry at " << it.row() << "," << it.col();
    }
  }
}

TEST(Assemble, PrimalRowsCoupleLocally) {
  const auto s = make_setup(constant_problem(Point(1, -1), 1.0, 1.0), DomainTag::LShape, 2);
  const SaddleSystem sys = s->system();
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(sys.matrix);
  for (int t = 0; t < s->mesh.num_elements(); ++t) {
    const auto local = s->dofs.local_lambda_dofs(t);
    const std::set<int> allowed(local.begin(), local.end());
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, s->dofs.primal_offset(t)); it; ++it)
      EXPECT_TRUE(allowed.count(static_cast<int>(it.col()))) << "element " << t;
  }
}

TEST(Assemble, ConstantSolutionSatisfiesSystem) {
  for (DomainTag tag : {DomainTag::UnitSquare, DomainTag::LShape}) {
    for (double tau : {0.0, 1.0}) {
      ProblemSpec spec = constant_problem(Point(1, -1), 1.0, tau);
      spec.f = constant_field(1.0);
      spec.g = constant_field(1.0);
      const auto s = make_setup(spec, tag, 3);
      const SaddleSystem sys = s->system();
      Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.size());
      x.tail(s->dofs.num_primal()).setOnes();
      EXPECT_LE((sys.matrix * x - sys.rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Assemble, StabilizerKernel) {
  const Mesh mesh = build_mesh(DomainTag::UnitSquare, 2);
  ProblemSpec spec = constant_problem(Point(1, -1), 0.0, 1.0);
  const BoundCoefficients coeffs(spec, mesh);
  const BoundaryClassification open = all_inflow(mesh);
  const DofMap dofs(mesh, 1, 1, open);
  const SaddleSystem sys = assemble(mesh, dofs, coeffs, open);
  // beta . grad(x + y) = 0 with c = 0
  const Eigen::VectorXd lambda = interpolate_lambda(dofs, mesh, [](const Point& x) { return x.x() + x.y(); });
  EXPECT_NEAR(sys.stabilizer_form(lambda), 0.0, 1e-13);

  spec.tau = 0.0;
  const BoundCoefficients no_tau(spec, mesh);
  const SaddleSystem sys0 = assemble(mesh, dofs, no_tau, open);
  const Eigen::VectorXd any = interpolate_lambda(dofs, mesh, [](const Point& x) { return 2.0 * x.x() - x.y(); });
  EXPECT_NEAR(sys0.stabilizer_form(any), 0.0, 1e-13);
  EXPECT_GT(sys.stabilizer_form(any), 1e-3);
}

TEST(Assemble, Deterministic) {
  const auto s = make_setup(constant_problem(Point(1, -1), 1.0, 1.0, sin_x_cos_y()), DomainTag::UnitSquare, 3);
  const SaddleSystem a = s->system(), b = s->system();
  EXPECT_EQ((a.matrix - b.matrix).norm(), 0.0);
  EXPECT_EQ((a.rhs - b.rhs).norm(), 0.0);
}

TEST(Assemble, MatrixMarketLowerTriangle) {
  const auto s = make_setup(constant_problem(Point(1, -1), 1.0, 1.0), DomainTag::UnitSquare, 0);
  const SaddleSystem sys = s->system();
  std::ostringstream os;
  write_matrix_market(os, sys.matrix);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "%%MatrixMarket matrix coordinate real symmetric");
  while (std::getline(is, line) && line[0] == '%') {
  }
  std::istringstream header(line);
  int rows = 0, cols = 0, nnz = 0;
  header >> rows >> cols >> nnz;
  EXPECT_EQ(rows, sys.size());
  EXPECT_EQ(cols, sys.size());
  int lines = 0;
  for (int r, c; is >> r >> c >> std::ws && std::getline(is, line); ++lines) EXPECT_GE(r, c);
  EXPECT_EQ(lines, nnz);
}
