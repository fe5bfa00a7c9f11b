#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pdwg;
using pdwg::test::reference_mesh;

namespace {

const DomainTag kDomains[] = {DomainTag::UnitSquare, DomainTag::LShape, DomainTag::CrackedSquare};

Eigen::VectorXd local_from(const ElementContext& ctx, const std::function<double(const Point&)>& interior,
                           const std::array<std::function<double(const Point&)>, 3>& traces) {
  const int nj = ctx.interior_basis.dimension(), nb = ctx.trace_basis.dimension();
  Eigen::VectorXd local(nj + 3 * nb);
  local.head(nj) = project_element(interior, ctx.interior_basis.degree(), ctx.geometry);
  for (int i = 0; i < 3; ++i) local.segment(nj + i * nb, nb) = project_edge(traces[i], ctx.trace_basis.degree(), ctx.segments[i]);
  return local;
}

}  // namespace

TEST(DofMap, ReferenceCount) {
  const Mesh mesh = build_mesh(DomainTag::UnitSquare, 0);
  const auto cls = classify_boundary(mesh, [](const Point&, int) { return Point(1, -1); });
  const DofMap dofs(mesh, 1, 1, cls);
  EXPECT_EQ(dofs.num_primal(), 2);
  EXPECT_EQ(dofs.num_constrained_edges(), 2);
  EXPECT_EQ(dofs.num_lambda(), 12);
  EXPECT_EQ(dofs.size(), 14);

  const DofMap low(mesh, 1, 0, cls);
  EXPECT_EQ(low.interior_dim(), 1);
  EXPECT_EQ(low.trace_dim(), 1);
  EXPECT_EQ(low.num_lambda(), 2 + 3);
}

TEST(DofMap, ConstrainedEdgesExcluded) {
  const Mesh mesh = build_mesh(DomainTag::LShape, 2);
  const auto cls = classify_boundary(mesh, [](const Point&, int) { return Point(1, -1); });
  const DofMap dofs(mesh, 1, 1, cls);
  std::vector<int> hits(static_cast<std::size_t>(dofs.num_lambda()), 0);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto local = dofs.local_lambda_dofs(t);
    ASSERT_EQ(static_cast<int>(local.size()), dofs.local_lambda_dim());
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.element_edges()[t][i];
      for (int c = 0; c < dofs.trace_dim(); ++c) {
        const int g = local[static_cast<std::size_t>(dofs.interior_dim() + i * dofs.trace_dim() + c)];
        EXPECT_EQ(g == kConstrained, static_cast<bool>(cls.is_outflow[e]));
      }
    }
    for (int g : local)
      if (g != kConstrained) ++hits[g];
  }
  for (int e = 0; e < mesh.num_edges(); ++e) EXPECT_EQ(dofs.is_constrained(e), static_cast<bool>(cls.is_outflow[e]));
  for (int h : hits) EXPECT_GE(h, 1);
}

TEST(DofMap, RejectsUnsupportedDegrees) {
  const Mesh mesh = build_mesh(DomainTag::UnitSquare, 0);
  const auto cls = classify_boundary(mesh, [](const Point&, int) { return Point(1, -1); });
  EXPECT_THROW(DofMap(mesh, 2, 1, cls), std::invalid_argument);
  EXPECT_THROW(DofMap(mesh, 1, 2, cls), std::invalid_argument);
}

TEST(WeakGradient, ReferenceExamples) {
  const Mesh mesh = reference_mesh();
  for (int j : {0, 1}) {
    const ElementContext ctx(mesh, 0, 1, j);
    const WeakGradientOp op = weak_gradient_local(ctx);
    const Point x = ctx.geometry.centroid;
    auto zero = [](const Point&) { return 0.0; };
    auto one = [](const Point&) { return 1.0; };

    const Eigen::VectorXd hyp = local_from(ctx, zero, {zero, one, zero});
    EXPECT_NEAR((op.evaluate(ctx, hyp, x) - Point(2, 2)).norm(), 0.0, 1e-12);

    const Eigen::VectorXd bubble = local_from(ctx, one, {zero, zero, zero});
    EXPECT_NEAR(op.evaluate(ctx, bubble, x).norm(), 0.0, 1e-12);
  }
  const ElementContext ctx(mesh, 0, 1, 1);
  auto fx = [](const Point& p) { return p.x(); };
  const Eigen::VectorXd linear = local_from(ctx, fx, {fx, fx, fx});
  EXPECT_NEAR((weak_gradient_local(ctx).evaluate(ctx, linear, ctx.geometry.centroid) - Point(1, 0)).norm(), 0.0, 1e-12);
}

TEST(WeakGradient, DefiningIdentityAllMeshes) {
  // Independent evaluation with a higher-order rule than the operator uses.
  const auto tri = quad_triangle(10);
  const auto edge = quad_edge(10);
  for (DomainTag tag : kDomains) {
    for (int level = 0; level <= 3; ++level) {
      const Mesh mesh = build_mesh(tag, level);
      for (int j : {0, 1}) {
        double worst = 0.0;
        for (int t = 0; t < mesh.num_elements(); ++t) {
          const ElementContext ctx(mesh, t, 1, j);
          const WeakGradientOp op = weak_gradient_local(ctx);
          const int nr = ctx.primal_basis.dimension(), nj = ctx.interior_basis.dimension(),
                    nb = ctx.trace_basis.dimension();
          const int nl = nj + 3 * nb;
          for (int a = 0; a < nl; ++a) {
            const Eigen::VectorXd v = Eigen::VectorXd::Unit(nl, a);
            for (int comp = 0; comp < 2; ++comp) {
              for (int b = 0; b < nr; ++b) {
                double lhs = 0.0, rhs = 0.0;
                ctx.for_each_point(tri, [&](const Point& x, double w) {
                  const double psi = ctx.primal_basis.values(x)(b);
                  const double div_psi = ctx.primal_basis.gradients(x)(b, comp);
                  lhs += w * op.evaluate(ctx, v, x)(comp) * psi;
                  rhs -= w * ctx.interior_basis.values(x).dot(v.head(nj)) * div_psi;
                });
                for (int i = 0; i < 3; ++i)
                  ctx.for_each_edge_point(i, edge, [&](const Point& x, double s, double w) {
                    const double psi_n = ctx.primal_basis.values(x)(b) * ctx.geometry.normals[i](comp);
                    rhs += w * ctx.trace_basis.values(s).dot(v.segment(nj + i * nb, nb)) * psi_n;
                  });
                worst = std::max(worst, std::abs(lhs - rhs));
              }
            }
          }
        }
        EXPECT_LT(worst, 1e-12) << to_string(tag) << " level " << level << " j " << j;
      }
    }
  }
}

TEST(WeakGradient, ConsistencyForContinuousLinears) {
  const Mesh mesh = build_mesh(DomainTag::LShape, 2);
  auto w = [](const Point& p) { return 0.7 - 1.3 * p.x() + 2.1 * p.y(); };
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementContext ctx(mesh, t, 1, 1);
    const Eigen::VectorXd local = local_from(ctx, w, {w, w, w});
    EXPECT_NEAR((weak_gradient_local(ctx).evaluate(ctx, local, ctx.geometry.centroid) - Point(-1.3, 2.1)).norm(),
                0.0, 1e-12);
  }
}

TEST(WeakGradient, Commutativity) {
  auto lin = [](const Point& p) { return 0.4 + 2.0 * p.x() - 0.5 * p.y(); };
  auto lin_grad = [](const Point&) { return Point(2.0, -0.5); };
  auto sq = [](const Point& p) { return p.x() * p.x(); };
  auto sq_grad = [](const Point& p) { return Point(2 * p.x(), 0.0); };
  for (DomainTag tag : kDomains) {
    for (int level = 0; level <= 3; ++level) {
      const Mesh mesh = build_mesh(tag, level);
      for (int j : {0, 1}) {
        EXPECT_LE(commutativity_check(lin, lin_grad, mesh, 1, j), 1e-11);
        EXPECT_LE(commutativity_check([](const Point&) { return 3.0; }, [](const Point&) { return Point(0, 0); },
                                      mesh, 1, j),
                  1e-11);
      }
      EXPECT_LE(commutativity_check(sq, sq_grad, mesh, 1, 1), 1e-12);
    }
  }
  const Mesh mesh = build_mesh(DomainTag::UnitSquare, 3);
  EXPECT_LE(commutativity_check([](const Point& p) { return std::sin(p.x()) * std::cos(p.y()); },
                                [](const Point& p) {
                                  return Point(std::cos(p.x()) * std::cos(p.y()), -std::sin(p.x()) * std::sin(p.y()));
                                },
                                mesh, 1, 1),
            1e-10);
}

TEST(WeakGradient, PerElementOperators) {
  const Mesh mesh = build_mesh(DomainTag::CrackedSquare, 1);
  const auto ops = weak_gradients(mesh, 1, 1);
  ASSERT_EQ(static_cast<int>(ops.size()), mesh.num_elements());
  for (const auto& op : ops) {
    EXPECT_EQ(op.matrix.rows(), 2);
    EXPECT_EQ(op.matrix.cols(), 9);
  }
}

TEST(WeakFunction, ConstrainedTraceIsZero) {
  const Mesh mesh = build_mesh(DomainTag::UnitSquare, 1);
  const auto cls = classify_boundary(mesh, [](const Point&, int) { return Point(1, -1); });
  const DofMap dofs(mesh, 1, 1, cls);
  WeakFunction lambda(dofs, Eigen::VectorXd::Ones(dofs.num_lambda()));
  for (int e = 0; e < mesh.num_edges(); ++e)
    EXPECT_DOUBLE_EQ(lambda.trace(e).norm(), dofs.is_constrained(e) ? 0.0 : std::sqrt(2.0));
  EXPECT_THROW(WeakFunction(dofs, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}
