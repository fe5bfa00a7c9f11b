#pragma once

#include "pdwg/analysis.hpp"
#include "pdwg/fields.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pdwg {

/// Acceptance annotations checked by `pdwg verify`.
struct Expectations {
  /// Upper bound for every error column at every level.
  std::optional<double> max_error;
  /// Range for the err_u order at the two finest transitions.
  std::optional<std::pair<double, double>> order_u;
  /// Range for the multiplier orders at the two finest transitions.
  std::optional<std::pair<double, double>> order_lambda;
  /// err_u strictly decreasing and order at the finest transition >= this.
  std::optional<double> monotone_with_min_order;
  /// Nominal err_u order (informational only).
  std::optional<double> nominal_order;
};

struct Experiment {
  std::string name;
  std::string description;
  ProblemSpec spec;
  int min_level = 0;
  int max_level = 5;
  Expectations expect;

  bool has_exact_solution() const { return spec.exact_u.has_value(); }
};

std::vector<Experiment> catalog();
/// Throws std::invalid_argument listing the available names.
Experiment find_experiment(const std::string& name);

struct StudyOptions {
  std::optional<int> min_level;
  std::optional<int> max_level;
  std::optional<double> tau;
  std::optional<int> j;
  double tol = 1e-11;
  /// Keep the post-processed field of the finest level.
  bool keep_field = true;
};

struct StudyRow {
  int level = 0;
  int inv_h = 1;
  int num_elements = 0;
  int num_unknowns = 0;
  std::optional<ErrorReport> errors;
  std::optional<double> order_u, order_l0, order_lb;
  double max_conservation_residual = 0.0;
  double max_flux_jump = 0.0;
  double f_scale = 1.0;
  double solver_residual = 0.0;
  std::string solver_method;
  double seconds = 0.0;
};

struct StudyReport {
  std::string experiment;
  std::vector<StudyRow> rows;
  std::optional<NodalField> field;
  bool complete = true;
  std::string failure;
};

Experiment apply_overrides(Experiment experiment, const StudyOptions& options);

/// Refinement study: for each level build, assemble, solve and analyze.
/// A solver failure stops the study and returns the rows computed so far.
StudyReport run_study(const Experiment& experiment, const StudyOptions& options = {});

/// CSV with header inv_h,err_u,order_u,err_l0,order_l0,err_lb,order_lb.
void write_csv(std::ostream& os, const StudyReport& report);
/// Per-level solver and conservation diagnostics (no timings).
void write_diagnostics_csv(std::ostream& os, const StudyReport& report);
/// CSV of x,y,value triples.
void write_field_csv(std::ostream& os, const NodalField& field);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Checks a finished study against the experiment's annotations plus the
/// conservation gate (max residual <= 1e-9 f_scale, max flux jump <= 1e-9).
std::vector<CheckResult> verify_study(const Experiment& experiment, const StudyReport& report);

}  // namespace pdwg
