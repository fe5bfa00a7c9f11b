#include "pdwg/fields.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pdwg {

namespace {
constexpr double kPi = std::numbers::pi;

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

ScalarField constant_field(double value) {
  return {"constant(" + format_number(value) + ")", [value](const Point&) { return value; },
          [](const Point&) { return Point(0.0, 0.0); }};
}

ScalarField sin_x_cos_y() {
  return {"sin(x)cos(y)", [](const Point& p) { return std::sin(p.x()) * std::cos(p.y()); },
          [](const Point& p) {
            return Point(std::cos(p.x()) * std::cos(p.y()), -std::sin(p.x()) * std::sin(p.y()));
          }};
}

ScalarField sin_x_sin_y() {
  return {"sin(x)sin(y)", [](const Point& p) { return std::sin(p.x()) * std::sin(p.y()); },
          [](const Point& p) {
            return Point(std::cos(p.x()) * std::sin(p.y()), std::sin(p.x()) * std::cos(p.y()));
          }};
}

ScalarField sin_x() {
  return {"sin(x)", [](const Point& p) { return std::sin(p.x()); },
          [](const Point& p) { return Point(std::cos(p.x()), 0.0); }};
}

ScalarField cos_ky(double k) {
  return {"cos(" + format_number(k) + "y)", [k](const Point& p) { return std::cos(k * p.y()); },
          [k](const Point& p) { return Point(0.0, -k * std::sin(k * p.y())); }};
}

ScalarField sin_pix_sin_piy() {
  return {"sin(pi x)sin(pi y)",
          [](const Point& p) { return std::sin(kPi * p.x()) * std::sin(kPi * p.y()); },
          [](const Point& p) {
            return Point(kPi * std::cos(kPi * p.x()) * std::sin(kPi * p.y()),
                         kPi * std::sin(kPi * p.x()) * std::cos(kPi * p.y()));
          }};
}

ScalarField sin_pix_cos_piy() {
  return {"sin(pi x)cos(pi y)",
          [](const Point& p) { return std::sin(kPi * p.x()) * std::cos(kPi * p.y()); },
          [](const Point& p) {
            return Point(kPi * std::cos(kPi * p.x()) * std::cos(kPi * p.y()),
                         -kPi * std::sin(kPi * p.x()) * std::sin(kPi * p.y()));
          }};
}

ScalarField layer_solution(double b1, double b2) {
  const double slope = b2 / b1;
  auto s = [slope](const Point& p) { return p.y() - slope * p.x() - 0.5; };
  return {"layer",
          [s](const Point& p) {
            const double v = s(p);
            return 1.0 / (v * v + 0.1);
          },
          [s, slope](const Point& p) {
            const double v = s(p);
            const double d = v * v + 0.1;
            const double du_ds = -2.0 * v / (d * d);
            return Point(-slope * du_ds, du_ds);
          }};
}

ScalarField kinked_layer_solution(double b1, double b2) {
  PiecewiseScalar pieces(layer_solution(b1, b2));
  pieces.branches.emplace_back(below_line(b2 / b1, 0.0), constant_field(20.0 / 7.0));
  auto field = piecewise_scalar(std::move(pieces));
  field.name = "kinked_layer";
  return field;
}

ScalarField piecewise_scalar(PiecewiseScalar pieces) {
  std::string name = "piecewise(";
  for (const auto& [region, field] : pieces.branches) name += field.name + ", ";
  name += pieces.otherwise.name + ")";
  auto shared = std::make_shared<const PiecewiseScalar>(std::move(pieces));
  return {name, [shared](const Point& p) { return shared->at(p).value(p); },
          [shared](const Point& p) { return shared->at(p).gradient(p); }};
}

VectorField constant_convection(double b1, double b2) {
  return {"[" + format_number(b1) + "," + format_number(b2) + "]",
          [b1, b2](const Point&) { return Point(b1, b2); }, [](const Point&) { return 0.0; }};
}

VectorField rotation(double cx, double cy) {
  return {"rotation(" + format_number(cx) + "," + format_number(cy) + ")",
          [cx, cy](const Point& p) { return Point(p.y() - cy, -(p.x() - cx)); },
          [](const Point&) { return 0.0; }};
}

HalfPlane below_line(double slope, double intercept) {
  // y - slope x - intercept < 0
  return {Point(-slope, 1.0), -intercept};
}

BoundCoefficients::BoundCoefficients(const ProblemSpec& spec, const Mesh& mesh) : spec_(&spec) {
  if (spec.tau < 0.0) throw std::invalid_argument("ProblemSpec: tau must be non-negative");
  if (!spec.f && !spec.exact_u)
    throw std::invalid_argument("ProblemSpec: load f missing and no exact solution to derive it");
  if (!spec.g && !spec.exact_u)
    throw std::invalid_argument("ProblemSpec: inflow data g missing and no exact solution");
  branch_.resize(static_cast<std::size_t>(mesh.num_elements()));
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto geo = element_geometry(mesh, t);
    branch_[t] = spec.beta.branch_index(geo.centroid);
    const double tol = 1e-12 * geo.diameter;
    for (const auto& [region, field] : spec.beta.branches) {
      double lo = 0.0, hi = 0.0;
      for (const Point& v : geo.vertices) {
        lo = std::min(lo, region.signed_value(v));
        hi = std::max(hi, region.signed_value(v));
      }
      if (lo < -tol && hi > tol) {
        ++straddling_;
        break;
      }
    }
  }
  if (straddling_ > 0)
    std::cerr << "warning: " << straddling_
              << " element(s) straddle a convection branch interface; using centroid branch\n";
}

Point BoundCoefficients::beta(const Point& x, int element) const {
  return spec_->beta.branch(branch_[element]).value(x);
}

double BoundCoefficients::div_beta(const Point& x, int element) const {
  return spec_->beta.branch(branch_[element]).divergence(x);
}

double BoundCoefficients::f(const Point& x, int element) const {
  if (spec_->f) return spec_->f->value(x);
  const ScalarField& u = *spec_->exact_u;
  return u.value(x) * (div_beta(x, element) + c(x)) + beta(x, element).dot(u.gradient(x));
}

double BoundCoefficients::g(const Point& x) const {
  return spec_->g ? spec_->g->value(x) : spec_->exact_u->value(x);
}

}  // namespace pdwg
