#include "pdwg/config.hpp"
#include "pdwg/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using namespace pdwg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitAcceptance = 3;

struct Selection {
  std::string experiment;
  std::string config;
  std::optional<int> levels;
  std::optional<double> tau;
  std::optional<int> j;
  double tol = kDefaultSolverTolerance;
};

void add_selection(CLI::App* cmd, Selection& sel) {
  auto* name = cmd->add_option("--experiment,-e", sel.experiment, "Catalog experiment name");
  auto* cfg = cmd->add_option("--config,-c", sel.config, "JSON problem description")->check(CLI::ExistingFile);
  name->excludes(cfg);
  cmd->add_option("--levels", sel.levels, "Number of refinement levels (1/h = 1 .. 2^(N-1))")
      ->check(CLI::Range(1, 10));
  cmd->add_option("--tau", sel.tau, "Stabilization parameter override")->check(CLI::NonNegativeNumber);
  cmd->add_option("--j", sel.j, "Multiplier degree (0 or 1)")->check(CLI::IsMember({0, 1}));
  cmd->add_option("--tol", sel.tol, "Relative residual tolerance")->check(CLI::Range(1e-14, 1e-6));
}

Experiment select(const Selection& sel) {
  if (sel.experiment.empty() == sel.config.empty())
    throw std::invalid_argument("exactly one of --experiment or --config is required");
  return sel.experiment.empty() ? load_experiment(sel.config) : find_experiment(sel.experiment);
}

StudyOptions options_of(const Selection& sel) {
  StudyOptions opts;
  if (sel.levels) {
    opts.min_level = 0;
    opts.max_level = *sel.levels - 1;
  }
  opts.tau = sel.tau;
  opts.j = sel.j;
  opts.tol = sel.tol;
  return opts;
}

void print_table(std::ostream& os, const StudyReport& report) {
  os << std::setw(6) << "1/h" << std::setw(14) << "err_u" << std::setw(8) << "order" << std::setw(14)
     << "err_l0" << std::setw(8) << "order" << std::setw(14) << "err_lb" << std::setw(8) << "order"
     << std::setw(12) << "cons" << std::setw(10) << "secs" << '\n';
  auto order = [&](const std::optional<double>& o) {
    std::ostringstream s;
    if (o) s << std::fixed << std::setprecision(3) << *o;
    return s.str();
  };
  for (const StudyRow& row : report.rows) {
    os << std::setw(6) << row.inv_h << std::scientific << std::setprecision(4);
    if (row.errors)
      os << std::setw(14) << row.errors->err_u << std::setw(8) << order(row.order_u) << std::setw(14)
         << row.errors->err_l0 << std::setw(8) << order(row.order_l0) << std::setw(14)
         << row.errors->err_lb << std::setw(8) << order(row.order_lb);
    else
      os << std::setw(66) << "(no exact solution)";
    os << std::setw(12) << std::setprecision(2) << row.max_conservation_residual << std::fixed
       << std::setw(10) << row.seconds << std::defaultfloat << '\n';
  }
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  fn(os);
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

int run(const Selection& sel, const std::string& out, bool dump) {
  const Experiment experiment = select(sel);
  const StudyOptions opts = options_of(sel);
  const StudyReport report = run_study(experiment, opts);
  fs::create_directories(out);
  const fs::path dir(out);
  write_file(dir / (experiment.name + ".csv"), [&](std::ostream& os) { write_csv(os, report); });
  write_file(dir / (experiment.name + "_diagnostics.csv"),
             [&](std::ostream& os) { write_diagnostics_csv(os, report); });
  if (report.field)
    write_file(dir / (experiment.name + "_field.csv"), [&](std::ostream& os) { write_field_csv(os, *report.field); });
  if (dump && report.complete) {
    const Experiment e = apply_overrides(experiment, opts);
    const Mesh mesh = build_mesh(e.spec.domain, e.max_level, e.spec.diagonal);
    const BoundCoefficients coeffs(e.spec, mesh);
    const BoundaryClassification boundary = classify_boundary(mesh, coeffs.beta_function());
    const DofMap dofs(mesh, e.spec.k, e.spec.j, boundary);
    write_file(dir / (experiment.name + "_mesh.txt"), [&](std::ostream& os) { write_mesh(os, mesh, &boundary); });
    const SaddleSystem system = assemble(mesh, dofs, coeffs, boundary);
    write_file(dir / (experiment.name + "_system.mtx"),
               [&](std::ostream& os) { write_matrix_market(os, system.matrix); });
  }
  print_table(std::cout, report);
  if (!report.complete) {
    std::cerr << "solver failure: " << report.failure << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

int verify(const Selection& sel) {
  const Experiment experiment = select(sel);
  const StudyOptions opts = options_of(sel);
  const StudyReport report = run_study(experiment, opts);
  print_table(std::cout, report);
  bool ok = true;
  for (const CheckResult& check : verify_study(apply_overrides(experiment, opts), report)) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  if (!report.complete) return kExitSolver;
  return ok ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual weak Galerkin solver for linear transport"};
  app.require_subcommand(1);

  Selection run_sel;
  std::string out;
  bool dump = false;
  auto* run_cmd = app.add_subcommand("run", "Run a refinement study and write CSV files");
  add_selection(run_cmd, run_sel);
  run_cmd->add_option("--out,-o", out, "Output directory")->required();
  run_cmd->add_flag("--dump", dump, "Also write the finest mesh and saddle matrix");

  auto* list_cmd = app.add_subcommand("list", "List catalog experiments");

  Selection verify_sel;
  auto* verify_cmd = app.add_subcommand("verify", "Run a study and check its acceptance annotations");
  add_selection(verify_cmd, verify_sel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*list_cmd) {
      for (const Experiment& e : catalog()) std::cout << std::left << std::setw(28) << e.name << e.description << '\n';
      return kExitOk;
    }
    if (*run_cmd) return run(run_sel, out, dump);
    if (*verify_cmd) return verify(verify_sel);
  } catch (const SolverError& err) {
    std::cerr << "solver failure: " << err.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
