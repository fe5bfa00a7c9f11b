#pragma once

#include "pdwg/basis.hpp"
#include "pdwg/mesh.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace pdwg {

inline constexpr int kConstrained = -1;
inline constexpr int kTriangleQuadDegree = 6;
inline constexpr int kEdgeQuadDegree = 7;  // four Gauss points

/// Global numbering for W_{j,h} with zero traces on the outflow boundary and
/// for the discontinuous primal space of degree k-1.
///
/// Layout of the unknown vector: interior multiplier coefficients (element
/// major), free trace coefficients (edge major), primal coefficients.
class DofMap {
 public:
  DofMap(const Mesh& mesh, int k, int j, const BoundaryClassification& boundary);

  int k() const { return k_; }
  int j() const { return j_; }
  int interior_dim() const { return tri_dim(j_); }
  int trace_dim() const { return edge_dim(j_); }
  int primal_dim() const { return tri_dim(k_ - 1); }
  /// Local multiplier layout: interior block then the three local edges.
  int local_lambda_dim() const { return interior_dim() + 3 * trace_dim(); }

  int interior_offset(int element) const { return element * interior_dim(); }
  /// First free index of edge e, or kConstrained on the outflow boundary.
  int trace_offset(int edge) const { return trace_offset_[edge]; }
  int primal_offset(int element) const { return num_lambda_ + element * primal_dim(); }
  bool is_constrained(int edge) const { return trace_offset_[edge] == kConstrained; }

  int num_lambda() const { return num_lambda_; }
  int num_primal() const { return num_primal_; }
  int size() const { return num_lambda_ + num_primal_; }
  int num_constrained_edges() const { return num_constrained_edges_; }

  /// Global indices of the local multiplier layout of an element; kConstrained
  /// marks trace slots on outflow edges.
  std::vector<int> local_lambda_dofs(int element) const;

  const Mesh& mesh() const { return *mesh_; }

 private:
  const Mesh* mesh_;
  int k_;
  int j_;
  std::vector<int> trace_offset_;
  int num_lambda_ = 0;
  int num_primal_ = 0;
  int num_constrained_edges_ = 0;
};

/// Multiplier lambda_h = {lambda_0, lambda_b}; outflow traces are implicitly zero.
class WeakFunction {
 public:
  explicit WeakFunction(const DofMap& dofs);
  WeakFunction(const DofMap& dofs, Eigen::VectorXd coefficients);

  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  Eigen::VectorXd& coefficients() { return coeffs_; }

  Eigen::VectorXd interior(int element) const;
  Eigen::VectorXd trace(int edge) const;
  /// Coefficients in the local multiplier layout of the element.
  Eigen::VectorXd local(int element) const;

  const DofMap& dofs() const { return *dofs_; }

 private:
  const DofMap* dofs_;
  Eigen::VectorXd coeffs_;
};

class PrimalFunction {
 public:
  explicit PrimalFunction(const DofMap& dofs);
  PrimalFunction(const DofMap& dofs, Eigen::VectorXd coefficients);

  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  Eigen::VectorXd& coefficients() { return coeffs_; }
  Eigen::VectorXd element(int t) const;

 private:
  const DofMap* dofs_;
  Eigen::VectorXd coeffs_;
};

/// Element-local bases and quadrature shared by assembly and post-processing.
struct ElementContext {
  ElementGeometry geometry;
  TriBasis<double> interior_basis;  // P_j(T)
  TriBasis<double> primal_basis;    // P_{k-1}(T)
  EdgeBasis<double> trace_basis;    // P_j(e)
  std::array<int, 3> edges;
  std::array<Segment<double>, 3> segments;  // global edge orientation

  ElementContext(const Mesh& mesh, int element, int k, int j);

  /// Quadrature points and weights on the element (physical).
  template <typename Fn>
  void for_each_point(const TriangleRule<double>& rule, Fn&& fn) const {
    const double jac = 2.0 * geometry.area;
    for (Eigen::Index q = 0; q < rule.size(); ++q)
      fn(map_to_triangle<double>(geometry, rule.points(q, 0), rule.points(q, 1)),
         rule.weights(q) * jac);
  }

  /// Quadrature on local edge i: (physical point, global parameter t, weight).
  template <typename Fn>
  void for_each_edge_point(int i, const EdgeRule<double>& rule, Fn&& fn) const {
    const Segment<double>& seg = segments[i];
    const double half = seg.length() / 2.0;
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const double t = rule.points(q, 0);
      fn(seg.at(t), t, rule.weights(q) * half);
    }
  }
};

/// Local discrete weak gradient: maps local multiplier coefficients to the
/// coefficients of a vector in [P_{k-1}(T)]^2 (x components, then y).
struct WeakGradientOp {
  Eigen::MatrixXd matrix;  // (2 * dim P_{k-1}) x local_lambda_dim
  int primal_dim = 0;

  /// Gradient value at x given local multiplier coefficients.
  Point evaluate(const ElementContext& ctx, const Eigen::VectorXd& local, const Point& x) const;
};

WeakGradientOp weak_gradient_local(const ElementContext& ctx);
std::vector<WeakGradientOp> weak_gradients(const Mesh& mesh, int k, int j);

/// Local multiplier coefficients of Q_h w = {Q_0 w, Q_b w} on an element.
Eigen::VectorXd project_weak(const ElementContext& ctx, const std::function<double(const Point&)>& w);

/// Max over elements of || grad_w(Q_h w) - Q_{k-1}(grad w) ||_T.
double commutativity_check(const std::function<double(const Point&)>& w,
                           const std::function<Point(const Point&)>& grad_w, const Mesh& mesh,
                           int k, int j);

}  // namespace pdwg
