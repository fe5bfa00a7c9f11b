#pragma once

#include "pdwg/harness.hpp"

#include <iosfwd>
#include <string>

namespace pdwg {

/// Reads an experiment from JSON. Fields are picked from the closed-form
/// registry by name, e.g.
///
///   {"name": "mine", "domain": "l_shape", "tau": 1,
///    "beta": {"piecewise": [{"below": {"normal": [1, 1], "offset": -1},
///                            "field": {"type": "constant", "args": [1, -1]}}],
///             "otherwise": {"type": "constant", "args": [-1, 1]}},
///    "c": {"type": "constant", "args": [1]},
///    "exact_u": {"type": "sin_pix_cos_piy"}}
///
/// Throws std::invalid_argument on unknown names or malformed input.
Experiment parse_experiment(std::istream& is);
Experiment parse_experiment(const std::string& text);
Experiment load_experiment(const std::string& path);

/// Registry names accepted for scalar and vector fields.
std::vector<std::string> scalar_registry();
std::vector<std::string> vector_registry();

}  // namespace pdwg
