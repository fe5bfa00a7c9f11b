#pragma once

#include <Eigen/Core>

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pdwg {

using Point = Eigen::Vector2d;

enum class DomainTag { UnitSquare, LShape, CrackedSquare };

std::string_view to_string(DomainTag tag);
DomainTag parse_domain(std::string_view name);

/// Orientation of the diagonal used to split each unit square of a coarse mesh.
enum class Diagonal {
  Main,  // lower-left to upper-right
  Anti,  // lower-right to upper-left
};

inline constexpr int kBoundary = -1;

struct Edge {
  /// Endpoints with v[0] < v[1]; this fixes the trace parameterization t in [-1, 1].
  std::array<int, 2> v;
  int left;   // lower-numbered incident element
  int right;  // kBoundary for boundary edges

  bool is_boundary() const { return right == kBoundary; }
};

/// Conforming triangulation with element/edge/vertex connectivity.
///
/// Local edge i of element t joins vertices i and (i+1)%3 of t. The sign in
/// element_edge_sign is +1 when the local traversal direction agrees with the
/// global edge direction (low vertex index to high).
class Mesh {
 public:
  Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> elements,
       DomainTag tag, int level = 0);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& element_edges() const { return element_edges_; }
  const std::vector<std::array<int, 3>>& element_edge_signs() const { return element_edge_signs_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_boundary_edges() const;

  int level() const { return level_; }
  DomainTag domain() const { return tag_; }

  Point vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  Point edge_midpoint(int e) const;
  double edge_length(int e) const;
  /// Unit normal of edge e pointing out of element t (t must be incident to e).
  Point edge_normal(int e, int t) const;
  /// Local index (0..2) of edge e inside element t, or -1.
  int local_edge_index(int t, int e) const;
  /// Elements sharing an edge with t.
  std::vector<int> neighbors(int t) const;

  double measure() const;
  /// Largest element diameter.
  double meshsize() const;

 private:
  void build_edges();

  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> elements_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> element_edges_;
  std::vector<std::array<int, 3>> element_edge_signs_;
  DomainTag tag_;
  int level_;
};

struct ElementGeometry {
  double area = 0.0;
  double diameter = 0.0;
  Point centroid = Point::Zero();
  std::array<Point, 3> vertices;
  std::array<double, 3> edge_lengths{};
  std::array<Point, 3> normals;  // outward unit normals, local edge order
};

ElementGeometry element_geometry(const Mesh& mesh, int element);
/// Geometry of a standalone triangle given counterclockwise vertices.
ElementGeometry triangle_geometry(const Point& a, const Point& b, const Point& c);

Mesh build_coarse_mesh(DomainTag tag, Diagonal diagonal = Diagonal::Main);
Mesh refine_uniform(const Mesh& mesh);
Mesh build_mesh(DomainTag tag, int level, Diagonal diagonal = Diagonal::Main);

struct BoundaryClassification {
  std::vector<int> inflow_edges;
  std::vector<int> outflow_edges;
  /// Per mesh edge: true for boundary edges on the inflow part.
  std::vector<bool> is_inflow;
  std::vector<bool> is_outflow;
  /// Per mesh edge (zero for interior edges).
  std::vector<Point> outward_normal;
  std::vector<double> beta_dot_n;
};

inline constexpr double kCharacteristicTol = 1e-12;

/// Splits boundary edges by the sign of beta . n at the edge midpoint. Edges with
/// |beta . n| <= kCharacteristicTol count as outflow.
BoundaryClassification classify_boundary(
    const Mesh& mesh, const std::function<Point(const Point&, int element)>& beta);

/// Plain-text dump: vertices, elements, and edges with INFLOW/OUTFLOW markers.
void write_mesh(std::ostream& os, const Mesh& mesh, const BoundaryClassification* boundary = nullptr);

}  // namespace pdwg
