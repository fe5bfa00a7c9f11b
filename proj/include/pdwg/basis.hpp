#pragma once

#include "pdwg/mesh.hpp"
#include "pdwg/quadrature.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace pdwg {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

constexpr int tri_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }
constexpr int edge_dim(int degree) { return degree + 1; }

/// Monomials of total degree <= degree in the centroid-scaled coordinates
/// xi = (x - xc)/h, eta = (y - yc)/h, ordered 1, xi, eta, xi^2, xi eta, eta^2, ...
template <typename Scalar = double>
class TriBasis {
 public:
  TriBasis(int degree, const Vec2<Scalar>& centroid, Scalar scale)
      : degree_(degree), centroid_(centroid), scale_(scale) {
    if (degree < 0) throw std::invalid_argument("TriBasis: negative degree");
  }

  int degree() const { return degree_; }
  int dimension() const { return tri_dim(degree_); }
  const Vec2<Scalar>& centroid() const { return centroid_; }
  Scalar scale() const { return scale_; }

  VecX<Scalar> values(const Vec2<Scalar>& x) const {
    const Vec2<Scalar> s = (x - centroid_) / scale_;
    VecX<Scalar> out(dimension());
    int i = 0;
    for (int d = 0; d <= degree_; ++d)
      for (int b = 0; b <= d; ++b) out(i++) = ipow(s.x(), d - b) * ipow(s.y(), b);
    return out;
  }

  /// dimension x 2 matrix of physical gradients.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> gradients(const Vec2<Scalar>& x) const {
    const Vec2<Scalar> s = (x - centroid_) / scale_;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 2> out(dimension(), 2);
    int i = 0;
    for (int d = 0; d <= degree_; ++d) {
      for (int b = 0; b <= d; ++b, ++i) {
        const int a = d - b;
        out(i, 0) = a == 0 ? Scalar(0) : a * ipow(s.x(), a - 1) * ipow(s.y(), b) / scale_;
        out(i, 1) = b == 0 ? Scalar(0) : b * ipow(s.x(), a) * ipow(s.y(), b - 1) / scale_;
      }
    }
    return out;
  }

 private:
  static Scalar ipow(Scalar v, int p) {
    Scalar r = 1;
    for (int k = 0; k < p; ++k) r *= v;
    return r;
  }

  int degree_;
  Vec2<Scalar> centroid_;
  Scalar scale_;
};

template <typename Scalar = double>
TriBasis<Scalar> make_tri_basis(int degree, const ElementGeometry& g) {
  return TriBasis<Scalar>(degree, g.centroid.cast<Scalar>(), Scalar(g.diameter));
}

/// Legendre polynomials P_0..P_degree in the edge parameter t in [-1,1].
template <typename Scalar = double>
class EdgeBasis {
 public:
  explicit EdgeBasis(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("EdgeBasis: negative degree");
  }

  int degree() const { return degree_; }
  int dimension() const { return edge_dim(degree_); }

  VecX<Scalar> values(Scalar t) const {
    VecX<Scalar> out(dimension());
    out(0) = 1;
    if (degree_ >= 1) out(1) = t;
    for (int k = 2; k <= degree_; ++k) out(k) = ((2 * k - 1) * t * out(k - 1) - (k - 1) * out(k - 2)) / k;
    return out;
  }

 private:
  int degree_;
};

/// Physical point of the reference triangle point (xi, eta).
template <typename Scalar = double>
Vec2<Scalar> map_to_triangle(const ElementGeometry& g, Scalar xi, Scalar eta) {
  const Vec2<Scalar> a = g.vertices[0].cast<Scalar>();
  const Vec2<Scalar> b = g.vertices[1].cast<Scalar>();
  const Vec2<Scalar> c = g.vertices[2].cast<Scalar>();
  return a + (b - a) * xi + (c - a) * eta;
}

/// Segment from p0 (t = -1) to p1 (t = +1).
template <typename Scalar = double>
struct Segment {
  Vec2<Scalar> p0, p1;

  Vec2<Scalar> at(Scalar t) const { return (p0 + p1) / 2 + (p1 - p0) * (t / 2); }
  Scalar length() const { return (p1 - p0).norm(); }
  /// Parameter of a point known to lie on the segment.
  Scalar param(const Vec2<Scalar>& x) const {
    const Vec2<Scalar> d = p1 - p0;
    return 2 * (x - p0).dot(d) / d.squaredNorm() - 1;
  }
};

/// Mesh edge e as a segment in its global orientation (low vertex to high).
inline Segment<double> edge_segment(const Mesh& mesh, int e) {
  const Edge& edge = mesh.edges()[e];
  return {mesh.vertex(edge.v[0]), mesh.vertex(edge.v[1])};
}

template <typename Scalar = double>
MatX<Scalar> element_mass_matrix(const TriBasis<Scalar>& basis, const ElementGeometry& g,
                                 const TriangleRule<Scalar>& rule) {
  const int n = basis.dimension();
  MatX<Scalar> m = MatX<Scalar>::Zero(n, n);
  const Scalar jac = Scalar(2 * g.area);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const auto phi = basis.values(map_to_triangle<Scalar>(g, rule.points(q, 0), rule.points(q, 1)));
    m.noalias() += rule.weights(q) * jac * phi * phi.transpose();
  }
  return m;
}

template <typename Scalar = double>
MatX<Scalar> edge_mass_matrix(const EdgeBasis<Scalar>& basis, const Segment<Scalar>& seg,
                              const EdgeRule<Scalar>& rule) {
  const int n = basis.dimension();
  MatX<Scalar> m = MatX<Scalar>::Zero(n, n);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const auto chi = basis.values(rule.points(q, 0));
    m.noalias() += rule.weights(q) * seg.length() / 2 * chi * chi.transpose();
  }
  return m;
}

/// L2 projection of f onto P_degree(T) in the scaled monomial basis of T.
template <typename Scalar = double, typename F>
VecX<Scalar> project_element(const F& f, int degree, const ElementGeometry& g,
                             int quad_degree = 8) {
  const auto basis = make_tri_basis<Scalar>(degree, g);
  const auto rule = quad_triangle<Scalar>(quad_degree);
  VecX<Scalar> rhs = VecX<Scalar>::Zero(basis.dimension());
  const Scalar jac = Scalar(2 * g.area);
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const auto x = map_to_triangle<Scalar>(g, rule.points(q, 0), rule.points(q, 1));
    rhs += rule.weights(q) * jac * Scalar(f(x)) * basis.values(x);
  }
  return element_mass_matrix<Scalar>(basis, g, rule).ldlt().solve(rhs);
}

/// L2 projection of f onto P_degree(e) in the Legendre basis of the segment.
template <typename Scalar = double, typename F>
VecX<Scalar> project_edge(const F& f, int degree, const Segment<Scalar>& seg, int quad_degree = kMaxQuadratureDegree) {
  const EdgeBasis<Scalar> basis(degree);
  const auto rule = quad_edge<Scalar>(quad_degree);
  VecX<Scalar> rhs = VecX<Scalar>::Zero(basis.dimension());
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const Scalar t = rule.points(q, 0);
    rhs += rule.weights(q) * seg.length() / 2 * Scalar(f(seg.at(t))) * basis.values(t);
  }
  return edge_mass_matrix<Scalar>(basis, seg, rule).ldlt().solve(rhs);
}

/// Evaluates a coefficient vector in the given basis.
template <typename Scalar = double>
Scalar evaluate(const TriBasis<Scalar>& basis, const VecX<Scalar>& coeffs, const Vec2<Scalar>& x) {
  return basis.values(x).dot(coeffs);
}

}  // namespace pdwg
