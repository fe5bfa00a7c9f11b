#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace pdwg {

/// Quadrature rule on a reference cell. For the triangle the points are
/// Cartesian coordinates on (0,0),(1,0),(0,1) and the weights sum to 1/2; for
/// the edge the points are on [-1,1] and the weights sum to 2.
template <typename Scalar, int Dim>
struct QuadRule {
  using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, Dim>;
  using Weights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Points points;
  Weights weights;
  int degree = 0;

  Eigen::Index size() const { return weights.size(); }
};

template <typename Scalar = double>
using TriangleRule = QuadRule<Scalar, 2>;
template <typename Scalar = double>
using EdgeRule = QuadRule<Scalar, 1>;

inline constexpr int kMaxQuadratureDegree = 10;

/// n-point Gauss-Legendre rule on [-1,1] (Newton iteration on P_n).
template <typename Scalar = double>
EdgeRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  EdgeRule<Scalar> rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  rule.degree = 2 * n - 1;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  // Returns {P_n(x), P_n'(x)} by the three-term recurrence.
  auto legendre = [n](Scalar x) {
    Scalar p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1;
    return std::pair<Scalar, Scalar>{p1, n * (x * p1 - p0) / (x * x - 1)};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const Scalar dx = p / dp;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-16)) break;
    }
    const Scalar dp = legendre(x).second;
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.points(i, 0) = -x;
    rule.points(n - 1 - i, 0) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.points((n - 1) / 2, 0) = 0;
  return rule;
}

/// Gauss-Legendre rule on [-1,1] exact for polynomials of the given degree.
template <typename Scalar = double>
EdgeRule<Scalar> quad_edge(int exactness_degree) {
  if (exactness_degree < 1 || exactness_degree > kMaxQuadratureDegree)
    throw std::invalid_argument("quad_edge: unsupported degree " + std::to_string(exactness_degree));
  auto rule = gauss_legendre<Scalar>((exactness_degree + 2) / 2);
  rule.degree = exactness_degree;
  return rule;
}

/// Collapsed (Duffy) tensor Gauss rule on the reference triangle, exact for
/// polynomials of total degree exactness_degree.
template <typename Scalar = double>
TriangleRule<Scalar> quad_triangle(int exactness_degree) {
  if (exactness_degree < 1 || exactness_degree > kMaxQuadratureDegree)
    throw std::invalid_argument("quad_triangle: unsupported degree " +
                                std::to_string(exactness_degree));
  // The collapse adds one degree in the first direction.
  const int n = (exactness_degree + 3) / 2;
  const auto gl = gauss_legendre<Scalar>(n);
  TriangleRule<Scalar> rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  rule.degree = exactness_degree;
  int q = 0;
  for (int i = 0; i < n; ++i) {
    const Scalar u = (gl.points(i, 0) + 1) / 2;
    for (int j = 0; j < n; ++j, ++q) {
      const Scalar v = (gl.points(j, 0) + 1) / 2;
      rule.points(q, 0) = u;
      rule.points(q, 1) = v * (1 - u);
      rule.weights(q) = gl.weights(i) * gl.weights(j) * (1 - u) / 4;
    }
  }
  return rule;
}

}  // namespace pdwg
