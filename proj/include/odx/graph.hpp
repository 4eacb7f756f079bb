#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "odx/objective.hpp"
#include "odx/rational.hpp"

namespace odx {

enum class Side : std::uint8_t { kRobot1 = 1, kRobot2 = 2 };

constexpr Side other(Side side) noexcept {
  return side == Side::kRobot1 ? Side::kRobot2 : Side::kRobot1;
}

constexpr int robot_number(Side side) noexcept { return static_cast<int>(side); }

// Throws Error(kInvalidArgument) unless robot is 1 or 2.
Side side_from_robot(int robot);

struct VertexId {
  Side side = Side::kRobot1;
  std::uint64_t index = 0;

  auto operator<=>(const VertexId&) const = default;
};

// "1:3" is vertex 3 of robot 1.
std::string to_string(const VertexId& id);

struct Vertex {
  VertexId id;
  Rational scan_size;
  std::optional<Rational> inertia;
};

// Input edge, endpoints given by vertex id.
struct EdgeSpec {
  std::uint64_t u = 0;  // index of a robot-1 vertex
  std::uint64_t v = 0;  // index of a robot-2 vertex
  Rational cost = 1;
};

// Validated edge. Endpoints are dense vertex positions (see
// ExchangeGraph::dense_index).
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational cost;
};

class ExchangeGraph;

// Per-vertex adjacency; conceptually the columns of the unoriented incidence
// matrix, each edge appearing in exactly two lists.
class IncidenceView {
 public:
  explicit IncidenceView(const ExchangeGraph& graph) : graph_(&graph) {}

  std::span<const std::size_t> incident(std::size_t dense) const;
  std::size_t degree(std::size_t dense) const { return incident(dense).size(); }
  // The two dense endpoints of an edge.
  std::pair<std::size_t, std::size_t> column(std::size_t edge) const;

 private:
  const ExchangeGraph* graph_;
};

// Vertex-weighted, edge-weighted bipartite exchange graph. Immutable after
// construction; every retained vertex has degree >= 1.
//
// Vertices are addressed densely: robot-1 vertices occupy [0, n1) and robot-2
// vertices [n1, n1 + n2), each in input order.
class ExchangeGraph {
 public:
  // Validates and prunes isolated vertices (reported through pruned()).
  // Throws Error with kDuplicateEdge, kNegativeWeight or kIndexOutOfRange.
  static ExchangeGraph build(std::vector<Vertex> v1, std::vector<Vertex> v2,
                             const std::vector<EdgeSpec>& edges);

  std::size_t size(Side side) const {
    return side == Side::kRobot1 ? n1_ : vertices_.size() - n1_;
  }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Vertex> vertices(Side side) const;
  std::span<const Edge> edges() const { return edges_; }

  const Vertex& vertex(std::size_t dense) const { return vertices_[dense]; }
  Side side_of(std::size_t dense) const {
    return dense < n1_ ? Side::kRobot1 : Side::kRobot2;
  }
  std::size_t dense_index(Side side, std::size_t position) const {
    return side == Side::kRobot1 ? position : n1_ + position;
  }

  std::optional<std::size_t> find(const VertexId& id) const;
  // Throws Error(kUnknownVertex).
  std::size_t require(const VertexId& id) const;

  IncidenceView incidence() const { return IncidenceView(*this); }
  std::size_t degree(std::size_t dense) const {
    return offsets_[dense + 1] - offsets_[dense];
  }

  // Vertices dropped during build because they had no incident edge.
  const std::vector<VertexId>& pruned() const { return pruned_; }

  // Scan size after any inertia override.
  const Rational& priced_scan_size(std::size_t dense) const {
    const Vertex& v = vertices_[dense];
    return v.inertia ? *v.inertia : v.scan_size;
  }

  // Total edge cost incident to a vertex.
  Rational incident_cost(std::size_t dense) const;

  friend bool operator==(const ExchangeGraph& a, const ExchangeGraph& b);

 private:
  friend class IncidenceView;
  ExchangeGraph() = default;

  std::vector<Vertex> vertices_;
  std::size_t n1_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> adjacency_;
  std::vector<VertexId> pruned_;
};

// Convenience constructor with positional ids: vertex i on either side gets
// index i, and edges refer to those positions.
ExchangeGraph build_graph(const std::vector<Rational>& v1_weights,
                          const std::vector<Rational>& v2_weights,
                          const std::vector<EdgeSpec>& edges);

// Weight of a vertex in the vertex-cover form of the objective:
// P1 -> w_l, P2 -> w_s, P3 -> w_s + omega * w_l, where
// w_l(v) = alpha_other * (sum of incident costs) and w_s honours inertia.
Rational effective_weight(const ExchangeGraph& graph, std::size_t dense,
                          const Objective& objective);
// Throws Error(kUnknownVertex).
Rational effective_weight(const ExchangeGraph& graph, const VertexId& id,
                          const Objective& objective);
std::vector<Rational> effective_weights(const ExchangeGraph& graph,
                                        const Objective& objective);

// Exchange-graph file format (UTF-8 JSON).
ExchangeGraph parse_graph_json(std::string_view text);
std::string graph_to_json(const ExchangeGraph& graph);
ExchangeGraph load_graph(const std::string& path);
void save_graph(const ExchangeGraph& graph, const std::string& path);

}  // namespace odx
