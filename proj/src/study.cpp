#include "pdwg/harness.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pdwg {

Experiment apply_overrides(Experiment experiment, const StudyOptions& options) {
  if (options.min_level) experiment.min_level = *options.min_level;
  if (options.max_level) experiment.max_level = *options.max_level;
  if (options.tau) {
    if (*options.tau < 0.0) throw std::invalid_argument("tau must be non-negative");
    experiment.spec.tau = *options.tau;
  }
  if (options.j) experiment.spec.j = *options.j;
  if (experiment.min_level < 0 || experiment.max_level < experiment.min_level)
    throw std::invalid_argument("invalid level range");
  return experiment;
}

StudyReport run_study(const Experiment& input, const StudyOptions& options) {
  const Experiment experiment = apply_overrides(input, options);
  const ProblemSpec& spec = experiment.spec;
  StudyReport report;
  report.experiment = experiment.name;

  for (int level = experiment.min_level; level <= experiment.max_level; ++level) {
    const auto start = std::chrono::steady_clock::now();
    const Mesh mesh = build_mesh(spec.domain, level, spec.diagonal);
    const BoundCoefficients coeffs(spec, mesh);
    const BoundaryClassification boundary = classify_boundary(mesh, coeffs.beta_function());
    const DofMap dofs(mesh, spec.k, spec.j, boundary);
    const SaddleSystem system = assemble(mesh, dofs, coeffs, boundary);

    StudyRow row;
    row.level = level;
    row.inv_h = 1 << level;
    row.num_elements = mesh.num_elements();
    row.num_unknowns = dofs.size();

    std::optional<Solution> solution;
    try {
      solution.emplace(solve(system, options.tol));
    } catch (const SolverError& err) {
      report.complete = false;
      report.failure = "level " + std::to_string(level) + ": " + err.what();
      return report;
    }
    row.solver_residual = solution->relative_residual;
    row.solver_method = solution->method;

    if (experiment.has_exact_solution()) row.errors = error_norms(*solution, coeffs, mesh);
    const ConservationReport cons = conservation_report(*solution, coeffs, mesh);
    row.max_conservation_residual = cons.max_residual;
    row.max_flux_jump = cons.max_flux_jump;
    row.f_scale = cons.f_scale;

    if (!report.rows.empty() && row.errors && report.rows.back().errors) {
      const ErrorReport& prev = *report.rows.back().errors;
      auto order = [](double a, double b) -> std::optional<double> {
        if (a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)) return convergence_order(a, b);
        return std::nullopt;
      };
      row.order_u = order(prev.err_u, row.errors->err_u);
      row.order_l0 = order(prev.err_l0, row.errors->err_l0);
      row.order_lb = order(prev.err_lb, row.errors->err_lb);
    }
    if (options.keep_field && level == experiment.max_level)
      report.field = postprocess_averages(solution->u, dofs, mesh);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

}  // namespace

void write_csv(std::ostream& os, const StudyReport& report) {
  os << "inv_h,err_u,order_u,err_l0,order_l0,err_lb,order_lb\n";
  for (const StudyRow& row : report.rows) {
    os << row.inv_h << ',';
    if (row.errors) {
      os << number(row.errors->err_u) << ',' << optional_number(row.order_u) << ','
         << number(row.errors->err_l0) << ',' << optional_number(row.order_l0) << ','
         << number(row.errors->err_lb) << ',' << optional_number(row.order_lb);
    } else {
      os << ",,,,,";
    }
    os << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const StudyReport& report) {
  os << "level,inv_h,elements,unknowns,solver,solver_residual,max_conservation_residual,"
        "max_flux_jump,f_scale\n";
  for (const StudyRow& row : report.rows)
    os << row.level << ',' << row.inv_h << ',' << row.num_elements << ',' << row.num_unknowns << ','
       << row.solver_method << ',' << number(row.solver_residual) << ','
       << number(row.max_conservation_residual) << ',' << number(row.max_flux_jump) << ','
       << number(row.f_scale) << '\n';
}

void write_field_csv(std::ostream& os, const NodalField& field) {
  os << "x,y,value\n";
  for (std::size_t i = 0; i < field.points.size(); ++i)
    os << number(field.points[i].x()) << ',' << number(field.points[i].y()) << ','
       << number(field.values[i]) << '\n';
}

std::vector<CheckResult> verify_study(const Experiment& experiment, const StudyReport& report) {
  std::vector<CheckResult> checks;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("study completes", report.complete, report.complete ? "all levels solved" : report.failure);
  if (report.rows.empty()) return checks;

  {
    bool ok = true;
    double worst_r = 0.0, worst_j = 0.0;
    for (const StudyRow& row : report.rows) {
      ok = ok && row.max_conservation_residual <= 1e-9 * row.f_scale && row.max_flux_jump <= 1e-9;
      worst_r = std::max(worst_r, row.max_conservation_residual / row.f_scale);
      worst_j = std::max(worst_j, row.max_flux_jump);
    }
    add("local conservation", ok,
        "max residual/scale " + number(worst_r) + ", max flux jump " + number(worst_j));
  }

  const Expectations& ex = experiment.expect;
  if (ex.max_error) {
    bool ok = true;
    double worst = 0.0;
    for (const StudyRow& row : report.rows) {
      if (!row.errors) continue;
      worst = std::max({worst, row.errors->err_u, row.errors->err_l0, row.errors->err_lb});
    }
    ok = worst <= *ex.max_error;
    add("errors at machine scale", ok, "max error " + number(worst) + " <= " + number(*ex.max_error));
  }

  auto finest_orders = [&](auto member) {
    std::vector<std::optional<double>> out;
    const std::size_t n = report.rows.size();
    for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i) out.push_back(report.rows[i].*member);
    return out;
  };
  auto range_check = [&](const std::string& name, auto member, std::pair<double, double> range) {
    const auto orders = finest_orders(member);
    bool ok = orders.size() == 2;
    std::string detail;
    for (const auto& o : orders) {
      ok = ok && o && *o >= range.first && *o <= range.second;
      detail += (o ? number(*o) : std::string("n/a")) + " ";
    }
    add(name, ok, detail + "in [" + number(range.first) + ", " + number(range.second) + "]");
  };
  if (ex.order_u) range_check("err_u order", &StudyRow::order_u, *ex.order_u);
  if (ex.order_lambda) {
    range_check("lambda_0 order", &StudyRow::order_l0, *ex.order_lambda);
    range_check("lambda_b order", &StudyRow::order_lb, *ex.order_lambda);
  }
  if (ex.monotone_with_min_order) {
    bool monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      monotone = monotone && report.rows[i].errors && report.rows[i - 1].errors &&
                 report.rows[i].errors->err_u < report.rows[i - 1].errors->err_u;
    const auto& last = report.rows.back().order_u;
    const bool ok = monotone && last && *last >= *ex.monotone_with_min_order;
    add("err_u monotone with finest order", ok,
        std::string(monotone ? "monotone" : "not monotone") + ", finest order " +
            (last ? number(*last) : std::string("n/a")));
  }
  return checks;
}

}  // namespace pdwg
