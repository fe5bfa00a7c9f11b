#include "pdwg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace pdwg {

std::string_view to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::UnitSquare: return "unit_square";
    case DomainTag::LShape: return "l_shape";
    case DomainTag::CrackedSquare: return "cracked_square";
  }
  return "unknown";
}

DomainTag parse_domain(std::string_view name) {
  if (name == "unit_square") return DomainTag::UnitSquare;
  if (name == "l_shape") return DomainTag::LShape;
  if (name == "cracked_square") return DomainTag::CrackedSquare;
  throw std::invalid_argument("unknown domain '" + std::string(name) +
                              "' (expected unit_square, l_shape or cracked_square)");
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> elements, DomainTag tag,
           int level)
    : vertices_(std::move(vertices)), elements_(std::move(elements)), tag_(tag), level_(level) {
  for (const auto& el : elements_) {
    const Point& a = vertices_[el[0]];
    const Point& b = vertices_[el[1]];
    const Point& c = vertices_[el[2]];
    const double twice_area = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (!(twice_area > 0.0)) throw std::invalid_argument("Mesh: element is not counterclockwise");
  }
  build_edges();
}

void Mesh::build_edges() {
  std::map<std::pair<int, int>, int> lookup;
  element_edges_.assign(elements_.size(), {});
  element_edge_signs_.assign(elements_.size(), {});
  for (int t = 0; t < num_elements(); ++t) {
    const auto& el = elements_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = el[i];
      const int b = el[(i + 1) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = lookup.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        edges_.push_back(Edge{{key.first, key.second}, t, kBoundary});
      } else {
        Edge& edge = edges_[it->second];
        if (edge.right != kBoundary) throw std::invalid_argument("Mesh: edge shared by more than two elements");
        edge.right = t;
      }
      element_edges_[t][i] = it->second;
      element_edge_signs_[t][i] = a < b ? 1 : -1;
    }
  }
}

int Mesh::num_boundary_edges() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_boundary(); }));
}

Point Mesh::edge_midpoint(int e) const {
  const Edge& edge = edges_[e];
  return 0.5 * (vertex(edge.v[0]) + vertex(edge.v[1]));
}

double Mesh::edge_length(int e) const {
  const Edge& edge = edges_[e];
  return (vertex(edge.v[1]) - vertex(edge.v[0])).norm();
}

int Mesh::local_edge_index(int t, int e) const {
  const auto& ee = element_edges_[t];
  for (int i = 0; i < 3; ++i)
    if (ee[i] == e) return i;
  return -1;
}

Point Mesh::edge_normal(int e, int t) const {
  const int i = local_edge_index(t, e);
  if (i < 0) throw std::invalid_argument("Mesh::edge_normal: edge not on element");
  const auto& el = elements_[t];
  const Point d = vertex(el[(i + 1) % 3]) - vertex(el[i]);
  // Counterclockwise traversal: the outward normal is the tangent rotated clockwise.
  return Point(d.y(), -d.x()).normalized();
}

std::vector<int> Mesh::neighbors(int t) const {
  std::vector<int> out;
  for (int e : element_edges_[t]) {
    const Edge& edge = edges_[e];
    if (edge.is_boundary()) continue;
    out.push_back(edge.left == t ? edge.right : edge.left);
  }
  return out;
}

double Mesh::measure() const {
  double sum = 0.0;
  for (int t = 0; t < num_elements(); ++t) sum += element_geometry(*this, t).area;
  return sum;
}

double Mesh::meshsize() const {
  double h = 0.0;
  for (int t = 0; t < num_elements(); ++t) h = std::max(h, element_geometry(*this, t).diameter);
  return h;
}

ElementGeometry triangle_geometry(const Point& a, const Point& b, const Point& c) {
  ElementGeometry g;
  g.vertices = {a, b, c};
  g.area = 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  g.centroid = (a + b + c) / 3.0;
  for (int i = 0; i < 3; ++i) {
    const Point d = g.vertices[(i + 1) % 3] - g.vertices[i];
    g.edge_lengths[i] = d.norm();
    g.normals[i] = Point(d.y(), -d.x()) / g.edge_lengths[i];
  }
  g.diameter = *std::max_element(g.edge_lengths.begin(), g.edge_lengths.end());
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, int element) {
  if (element < 0 || element >= mesh.num_elements())
    throw std::out_of_range("element_geometry: element index out of range");
  const auto& el = mesh.elements()[element];
  return triangle_geometry(mesh.vertex(el[0]), mesh.vertex(el[1]), mesh.vertex(el[2]));
}

namespace {

// Assembles a coarse mesh from unit squares given by their lower-left corners.
// Vertices on the crack (y == 0, x > 0) receive a separate copy for squares
// above the crack so the two sides share no edge.
Mesh mesh_from_squares(const std::vector<Point>& corners, DomainTag tag, Diagonal diagonal) {
  std::map<std::tuple<double, double, int>, int> ids;
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> elements;

  auto vertex_id = [&](double x, double y, bool upper_square) {
    const bool on_crack = tag == DomainTag::CrackedSquare && y == 0.0 && x > 0.0;
    const int side = on_crack && upper_square ? 1 : 0;
    auto [it, inserted] = ids.try_emplace({x, y, side}, static_cast<int>(vertices.size()));
    if (inserted) vertices.emplace_back(x, y);
    return it->second;
  };

  for (const Point& c : corners) {
    const bool upper = c.y() >= 0.0;
    const int p00 = vertex_id(c.x(), c.y(), upper);
    const int p10 = vertex_id(c.x() + 1.0, c.y(), upper);
    const int p11 = vertex_id(c.x() + 1.0, c.y() + 1.0, upper);
    const int p01 = vertex_id(c.x(), c.y() + 1.0, upper);
    if (diagonal == Diagonal::Main) {
      elements.push_back({p00, p10, p11});
      elements.push_back({p00, p11, p01});
    } else {
      elements.push_back({p00, p10, p01});
      elements.push_back({p10, p11, p01});
    }
  }
  return Mesh(std::move(vertices), std::move(elements), tag, 0);
}

}  // namespace

Mesh build_coarse_mesh(DomainTag tag, Diagonal diagonal) {
  switch (tag) {
    case DomainTag::UnitSquare:
      return mesh_from_squares({Point(0, 0)}, tag, diagonal);
    case DomainTag::LShape:
      return mesh_from_squares({Point(0, 0), Point(1, 0), Point(0, 1)}, tag, diagonal);
    case DomainTag::CrackedSquare:
      return mesh_from_squares({Point(-1, -1), Point(0, -1), Point(-1, 0), Point(0, 0)}, tag,
                               diagonal);
  }
  throw std::invalid_argument("build_coarse_mesh: unknown domain");
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  vertices.reserve(vertices.size() + mesh.edges().size());
  const int nv = mesh.num_vertices();
  for (int e = 0; e < mesh.num_edges(); ++e) vertices.push_back(mesh.edge_midpoint(e));

  std::vector<std::array<int, 3>> elements;
  elements.reserve(4 * mesh.elements().size());
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto& el = mesh.elements()[t];
    const auto& ee = mesh.element_edges()[t];
    // ee[i] joins el[i] and el[i+1].
    const int m01 = nv + ee[0];
    const int m12 = nv + ee[1];
    const int m20 = nv + ee[2];
    elements.push_back({el[0], m01, m20});
    elements.push_back({m01, el[1], m12});
    elements.push_back({m20, m12, el[2]});
    elements.push_back({m01, m12, m20});
  }
  return Mesh(std::move(vertices), std::move(elements), mesh.domain(), mesh.level() + 1);
}

Mesh build_mesh(DomainTag tag, int level, Diagonal diagonal) {
  if (level < 0) throw std::invalid_argument("build_mesh: negative level");
  Mesh mesh = build_coarse_mesh(tag, diagonal);
  for (int l = 0; l < level; ++l) mesh = refine_uniform(mesh);
  return mesh;
}

BoundaryClassification classify_boundary(
    const Mesh& mesh, const std::function<Point(const Point&, int)>& beta) {
  BoundaryClassification bc;
  const auto ne = static_cast<std::size_t>(mesh.num_edges());
  bc.is_inflow.assign(ne, false);
  bc.is_outflow.assign(ne, false);
  bc.outward_normal.assign(ne, Point::Zero());
  bc.beta_dot_n.assign(ne, 0.0);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (!edge.is_boundary()) continue;
    const Point n = mesh.edge_normal(e, edge.left);
    const double bn = beta(mesh.edge_midpoint(e), edge.left).dot(n);
    bc.outward_normal[e] = n;
    bc.beta_dot_n[e] = bn;
    if (bn < -kCharacteristicTol) {
      bc.is_inflow[e] = true;
      bc.inflow_edges.push_back(e);
    } else {
      bc.is_outflow[e] = true;
      bc.outflow_edges.push_back(e);
    }
  }
  return bc;
}

void write_mesh(std::ostream& os, const Mesh& mesh, const BoundaryClassification* boundary) {
  const auto old_precision = os.precision(17);
  os << "# domain " << to_string(mesh.domain()) << " level " << mesh.level() << '\n';
  os << "vertices " << mesh.num_vertices() << '\n';
  for (int v = 0; v < mesh.num_vertices(); ++v)
    os << v << ' ' << mesh.vertex(v).x() << ' ' << mesh.vertex(v).y() << '\n';
  os << "elements " << mesh.num_elements() << '\n';
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto& el = mesh.elements()[t];
    os << t << ' ' << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  }
  os << "edges " << mesh.num_edges() << '\n';
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    os << e << ' ' << edge.v[0] << ' ' << edge.v[1] << ' ' << edge.left << ' ';
    if (!edge.is_boundary())
      os << edge.right;
    else if (boundary && boundary->is_inflow[e])
      os << "INFLOW";
    else if (boundary)
      os << "OUTFLOW";
    else
      os << "BOUNDARY";
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace pdwg
