#pragma once

#include "pdwg/mesh.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pdwg {

/// Closed-form scalar field with its analytic gradient.
struct ScalarField {
  std::string name;
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;

  double operator()(const Point& x) const { return value(x); }
};

/// Closed-form convection field with its analytic divergence.
struct VectorField {
  std::string name;
  std::function<Point(const Point&)> value;
  std::function<double(const Point&)> divergence;

  Point operator()(const Point& x) const { return value(x); }
};

/// Open half plane {x : normal . x + offset < 0}.
struct HalfPlane {
  Point normal = Point::Zero();
  double offset = 0.0;

  double signed_value(const Point& x) const { return normal.dot(x) + offset; }
  bool contains(const Point& x) const { return signed_value(x) < 0.0; }
};

/// Ordered list of (region, field) branches with a fallback. The first region
/// containing a point selects its branch.
template <typename Field>
struct Piecewise {
  std::vector<std::pair<HalfPlane, Field>> branches;
  Field otherwise;

  Piecewise() = default;
  Piecewise(Field f) : otherwise(std::move(f)) {}  // NOLINT: implicit uniform field

  int branch_index(const Point& x) const {
    for (std::size_t i = 0; i < branches.size(); ++i)
      if (branches[i].first.contains(x)) return static_cast<int>(i);
    return static_cast<int>(branches.size());
  }
  const Field& branch(int index) const {
    return index < static_cast<int>(branches.size()) ? branches[index].second : otherwise;
  }
  const Field& at(const Point& x) const { return branch(branch_index(x)); }
  bool is_uniform() const { return branches.empty(); }
};

using PiecewiseScalar = Piecewise<ScalarField>;
using PiecewiseVector = Piecewise<VectorField>;

ScalarField constant_field(double value);
ScalarField sin_x_cos_y();
ScalarField sin_x_sin_y();
ScalarField sin_x();
ScalarField cos_ky(double k);
ScalarField sin_pix_sin_piy();
ScalarField sin_pix_cos_piy();
/// ((y - (b2/b1) x - 1/2)^2 + 1/10)^{-1}
ScalarField layer_solution(double b1, double b2);
/// Layer solution above y = (b2/b1) x and the constant 20/7 below it.
ScalarField kinked_layer_solution(double b1, double b2);
/// Composes scalar branches by half-plane predicates (gradient taken per branch).
ScalarField piecewise_scalar(PiecewiseScalar pieces);

VectorField constant_convection(double b1, double b2);
/// [y - cy, -(x - cx)]
VectorField rotation(double cx, double cy);

/// Half plane y < slope * x + intercept.
HalfPlane below_line(double slope, double intercept);

struct ProblemSpec {
  DomainTag domain = DomainTag::UnitSquare;
  Diagonal diagonal = Diagonal::Main;
  PiecewiseVector beta;
  ScalarField c = constant_field(0.0);
  /// Load. When absent it is derived from exact_u as div(beta u) + c u.
  std::optional<ScalarField> f;
  /// Inflow data. When absent it is the trace of exact_u.
  std::optional<ScalarField> g;
  std::optional<ScalarField> exact_u;
  double tau = 1.0;
  int k = 1;
  int j = 1;
};

/// Coefficients of a ProblemSpec bound to a mesh. Each element uses the
/// convection branch that contains its centroid.
class BoundCoefficients {
 public:
  BoundCoefficients(const ProblemSpec& spec, const Mesh& mesh);

  Point beta(const Point& x, int element) const;
  double div_beta(const Point& x, int element) const;
  double c(const Point& x) const { return spec_->c(x); }
  double f(const Point& x, int element) const;
  double g(const Point& x) const;
  double tau() const { return spec_->tau; }
  const ProblemSpec& spec() const { return *spec_; }

  int element_branch(int element) const { return branch_[element]; }
  /// Elements whose vertices lie strictly on both sides of a branch interface.
  int straddling_elements() const { return straddling_; }

  std::function<Point(const Point&, int)> beta_function() const {
    return [this](const Point& x, int t) { return beta(x, t); };
  }

 private:
  const ProblemSpec* spec_;
  std::vector<int> branch_;
  int straddling_ = 0;
};

}  // namespace pdwg
