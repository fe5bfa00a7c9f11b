#include "pdwg/harness.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pdwg {

namespace {

PiecewiseVector split_antidiagonal(VectorField below, VectorField above) {
  PiecewiseVector beta(std::move(above));
  beta.branches.emplace_back(below_line(-1.0, 1.0), std::move(below));
  return beta;
}

std::string describe(const ProblemSpec& s) {
  std::ostringstream os;
  os << to_string(s.domain) << ", beta = ";
  for (const auto& [region, field] : s.beta.branches) os << field.name << " | ";
  os << s.beta.otherwise.name << ", c = " << s.c.name << ", tau = " << s.tau;
  if (s.exact_u) os << ", u = " << s.exact_u->name;
  if (s.f) os << ", f = " << s.f->name;
  if (s.g) os << ", g = " << s.g->name;
  return os.str();
}

Experiment make(std::string name, DomainTag domain, PiecewiseVector beta, double c, double tau,
                std::optional<ScalarField> exact, Expectations expect = {}) {
  Experiment e;
  e.name = std::move(name);
  e.spec.domain = domain;
  e.spec.diagonal = Diagonal::Anti;
  e.spec.beta = std::move(beta);
  e.spec.c = constant_field(c);
  e.spec.tau = tau;
  e.spec.exact_u = std::move(exact);
  e.expect = std::move(expect);
  e.description = describe(e.spec);
  return e;
}

Experiment demo(std::string name, DomainTag domain, PiecewiseVector beta, double c, double f,
                ScalarField g) {
  Experiment e = make(std::move(name), domain, std::move(beta), c, 0.0, std::nullopt);
  e.spec.f = constant_field(f);
  e.spec.g = std::move(g);
  e.description = describe(e.spec);
  return e;
}

std::string tau_suffix(double tau) {
  if (tau == std::floor(tau)) return "_tau" + std::to_string(static_cast<long long>(tau));
  std::ostringstream os;
  os << "_tau" << tau;
  return os.str();
}

}  // namespace

std::vector<Experiment> catalog() {
  const auto U = DomainTag::UnitSquare;
  const auto L = DomainTag::LShape;
  const auto C = DomainTag::CrackedSquare;
  const double b1 = std::cos(std::numbers::pi / 6.0);
  const double b2 = std::sin(std::numbers::pi / 6.0);

  Expectations exact_constant;
  exact_constant.max_error = 1e-8;
  Expectations first_order;
  first_order.nominal_order = 1.0;
  Expectations table5 = first_order;
  table5.order_u = {0.85, 1.15};
  table5.order_lambda = {1.8, 2.2};
  Expectations piecewise = first_order;
  piecewise.order_u = {0.85, 1.15};
  Expectations kinked;
  kinked.monotone_with_min_order = 1.0;

  std::vector<Experiment> out;
  const VectorField down = constant_convection(1.0, -1.0);

  // Constant exact solution.
  out.push_back(make("table1", U, down, 1.0, 1.0, constant_field(1.0), exact_constant));
  out.push_back(make("table2", U, down, 1.0, 0.0, constant_field(1.0), exact_constant));
  out.push_back(make("table3", L, down, 1.0, 1.0, constant_field(1.0), exact_constant));
  out.push_back(make("table4", L, down, 1.0, 0.0, constant_field(1.0), exact_constant));

  out.push_back(make("table5", U, down, 1.0, 1.0, sin_x_cos_y(), table5));
  out.push_back(make("table6", U, down, 1.0, 0.0, sin_x_cos_y(), first_order));
  out.push_back(make("table7", L, down, 1.0, 1.0, sin_x_cos_y(), first_order));
  out.push_back(make("table8", L, down, 1.0, 0.0, sin_x_cos_y(), first_order));

  const double taus[] = {0.0, 0.001, 1.0, 1000.0};
  for (int i = 0; i < 4; ++i)
    out.push_back(make("table" + std::to_string(9 + i), U, constant_convection(1.0, 1.0), -1.0, taus[i],
                       sin_pix_sin_piy(), first_order));
  for (int i = 0; i < 4; ++i)
    out.push_back(make("table" + std::to_string(13 + i), L, constant_convection(1.0, 1.0), 1.0,
                       taus[i], sin_pix_sin_piy(), first_order));

  for (double tau : {0.0, 1.0, 10000.0})
    out.push_back(make("fig1" + tau_suffix(tau), U, rotation(0.5, 0.5), 1.0, tau, sin_x_cos_y(),
                       first_order));

  out.push_back(make("table17", L, rotation(1.0, 1.0), 1.0, 1.0, sin_x_cos_y(), first_order));
  out.push_back(make("table18", L, rotation(1.0, 1.0), 1.0, 0.0, sin_x_cos_y(), first_order));

  for (double tau : {0.0, 1.0})
    out.push_back(make("fig2" + tau_suffix(tau), C, rotation(0.0, 0.0), 1.0, tau, sin_x_sin_y(),
                       first_order));

  out.push_back(make("table19", C, rotation(0.0, 0.0), 1.0, 1.0, sin_pix_cos_piy(), first_order));
  out.push_back(make("table20", C, rotation(0.0, 0.0), 1.0, 0.0, sin_pix_cos_piy(), first_order));

  for (double tau : {0.0, 1.0})
    out.push_back(make("fig3" + tau_suffix(tau), U, split_antidiagonal(rotation(0.0, 0.0), rotation(1.0, 1.0)),
                       1.0, tau, sin_x_cos_y(), first_order));

  const auto flip = split_antidiagonal(constant_convection(1.0, -1.0), constant_convection(-1.0, 1.0));
  const struct {
    const char* name;
    DomainTag domain;
    double tau;
  } piecewise_cases[] = {{"table21", U, 1.0}, {"table22", U, 0.0}, {"table23", L, 1.0}, {"table24", L, 0.0}};
  for (const auto& pc : piecewise_cases)
    out.push_back(make(pc.name, pc.domain, flip, 1.0, pc.tau, sin_pix_cos_piy(), piecewise));

  for (double tau : {0.0, 1.0})
    out.push_back(make("fig4" + tau_suffix(tau), U, constant_convection(b1, b2), 0.0, tau,
                       layer_solution(b1, b2), first_order));
  for (double tau : {0.0, 1.0})
    out.push_back(make("fig5" + tau_suffix(tau), U, constant_convection(b1, b2), 0.0, tau,
                       kinked_layer_solution(b1, b2), kinked));

  // Demonstrations without a closed-form solution.
  {
    PiecewiseScalar g(constant_field(-1.0));
    g.branches.emplace_back(below_line(-1.0, 1.0), constant_field(1.0));
    out.push_back(demo("demo_discontinuous_inflow", U, down, 0.0, 0.0, piecewise_scalar(std::move(g))));
  }
  for (double f : {1.0, 0.0})
    out.push_back(demo(f == 1.0 ? "demo_swirl_f1" : "demo_swirl_f0", U,
                       split_antidiagonal(rotation(-1.0, -1.0), rotation(2.0, 2.0)), 0.0, f, cos_ky(5.0)));
  for (double f : {10000.0, 0.0})
    out.push_back(demo(f > 0 ? "demo_vortex_f10000" : "demo_vortex_f0", U, rotation(0.5, 0.5), 1.0, f,
                       cos_ky(1.0)));
  for (double f : {10000.0, 0.0})
    out.push_back(demo(f > 0 ? "demo_cracked_f10000" : "demo_cracked_f0", C, rotation(0.0, 0.0), 0.0, f,
                       sin_x()));
  for (double f : {10000.0, 0.0})
    out.push_back(demo(f > 0 ? "demo_lshape_f10000" : "demo_lshape_f0", L, flip, 1.0, f, sin_x_cos_y()));
  return out;
}

Experiment find_experiment(const std::string& name) {
  auto all = catalog();
  for (auto& e : all)
    if (e.name == name) return std::move(e);
  std::string names;
  for (const auto& e : all) names += (names.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown experiment '" + name + "'; available: " + names);
}

}  // namespace pdwg
