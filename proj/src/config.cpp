#include "pdwg/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pdwg {

namespace {

using json = nlohmann::json;

std::vector<double> args_of(const json& j, std::size_t count, const std::string& type) {
  std::vector<double> args;
  if (j.contains("args")) args = j.at("args").get<std::vector<double>>();
  if (args.size() != count)
    throw std::invalid_argument("field '" + type + "' expects " + std::to_string(count) + " args");
  return args;
}

ScalarField scalar_leaf(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") return constant_field(args_of(j, 1, type)[0]);
  if (type == "sin_x_cos_y") return sin_x_cos_y();
  if (type == "sin_x_sin_y") return sin_x_sin_y();
  if (type == "sin_x") return sin_x();
  if (type == "cos_ky") return cos_ky(args_of(j, 1, type)[0]);
  if (type == "sin_pix_sin_piy") return sin_pix_sin_piy();
  if (type == "sin_pix_cos_piy") return sin_pix_cos_piy();
  if (type == "layer") {
    const auto a = args_of(j, 2, type);
    return layer_solution(a[0], a[1]);
  }
  if (type == "kinked_layer") {
    const auto a = args_of(j, 2, type);
    return kinked_layer_solution(a[0], a[1]);
  }
  throw std::invalid_argument("unknown scalar field '" + type + "'");
}

VectorField vector_leaf(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") {
    const auto a = args_of(j, 2, type);
    return constant_convection(a[0], a[1]);
  }
  if (type == "rotation") {
    const auto a = args_of(j, 2, type);
    return rotation(a[0], a[1]);
  }
  throw std::invalid_argument("unknown vector field '" + type + "'");
}

HalfPlane half_plane(const json& j) {
  const auto n = j.at("normal").get<std::vector<double>>();
  if (n.size() != 2) throw std::invalid_argument("half plane normal needs 2 components");
  HalfPlane h;
  h.normal = Point(n[0], n[1]);
  h.offset = j.value("offset", 0.0);
  return h;
}

template <typename Field, typename Leaf>
Piecewise<Field> piecewise(const json& j, Leaf leaf) {
  if (!j.contains("piecewise")) return Piecewise<Field>(leaf(j));
  Piecewise<Field> out(leaf(j.at("otherwise")));
  for (const json& b : j.at("piecewise")) out.branches.emplace_back(half_plane(b.at("below")), leaf(b.at("field")));
  return out;
}

ScalarField scalar(const json& j) {
  if (!j.contains("piecewise")) return scalar_leaf(j);
  return piecewise_scalar(piecewise<ScalarField>(j, scalar_leaf));
}

Experiment from_json(const json& j) {
  Experiment e;
  e.name = j.value("name", std::string("config"));
  ProblemSpec& s = e.spec;
  s.domain = parse_domain(j.value("domain", std::string("unit_square")));
  const auto diagonal = j.value("diagonal", std::string("main"));
  if (diagonal == "main") s.diagonal = Diagonal::Main;
  else if (diagonal == "anti") s.diagonal = Diagonal::Anti;
  else throw std::invalid_argument("diagonal must be 'main' or 'anti'");
  s.beta = piecewise<VectorField>(j.at("beta"), vector_leaf);
  if (j.contains("c")) s.c = scalar(j.at("c"));
  if (j.contains("f")) s.f = scalar(j.at("f"));
  if (j.contains("g")) s.g = scalar(j.at("g"));
  if (j.contains("exact_u")) s.exact_u = scalar(j.at("exact_u"));
  s.tau = j.value("tau", 1.0);
  s.k = j.value("k", 1);
  s.j = j.value("j", 1);
  if (s.tau < 0.0) throw std::invalid_argument("tau must be non-negative");
  if (!s.exact_u && (!s.f || !s.g)) throw std::invalid_argument("f and g are required without exact_u");
  if (j.contains("levels")) {
    const auto levels = j.at("levels").get<std::vector<int>>();
    if (levels.size() != 2 || levels[0] < 0 || levels[1] < levels[0])
      throw std::invalid_argument("levels must be [min, max] with 0 <= min <= max");
    e.min_level = levels[0];
    e.max_level = levels[1];
  }
  e.description = "from config";
  return e;
}

}  // namespace

Experiment parse_experiment(std::istream& is) {
  try {
    return from_json(json::parse(is));
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("config: ") + err.what());
  }
}

Experiment parse_experiment(const std::string& text) {
  std::istringstream is(text);
  return parse_experiment(is);
}

Experiment load_experiment(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config '" + path + "'");
  return parse_experiment(is);
}

std::vector<std::string> scalar_registry() {
  return {"constant", "sin_x_cos_y", "sin_x_sin_y", "sin_x", "cos_ky",
          "sin_pix_sin_piy", "sin_pix_cos_piy", "layer", "kinked_layer"};
}

std::vector<std::string> vector_registry() { return {"constant", "rotation"}; }

}  // namespace pdwg
