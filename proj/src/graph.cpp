#include "odx/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "json_text.hpp"
#include "odx/error.hpp"

namespace odx {

Side side_from_robot(int robot) {
  if (robot == 1) return Side::kRobot1;
  if (robot == 2) return Side::kRobot2;
  throw Error(ErrorKind::kInvalidArgument, "robot index must be 1 or 2, got " + std::to_string(robot));
}

std::string to_string(const VertexId& id) {
  return std::to_string(robot_number(id.side)) + ":" + std::to_string(id.index);
}

std::span<const std::size_t> IncidenceView::incident(std::size_t dense) const {
  const auto& g = *graph_;
  return std::span<const std::size_t>(g.adjacency_).subspan(
      g.offsets_[dense], g.offsets_[dense + 1] - g.offsets_[dense]);
}

std::pair<std::size_t, std::size_t> IncidenceView::column(std::size_t edge) const {
  const Edge& e = graph_->edges_[edge];
  return {e.u, e.v};
}

namespace {

void check_weight(const Rational& value, const std::string& what) {
  if (value < 0) throw Error(ErrorKind::kNegativeWeight, what + " is negative (" + to_string(value) + ")");
}

std::map<std::uint64_t, std::size_t> index_side(const std::vector<Vertex>& vertices, Side side) {
  std::map<std::uint64_t, std::size_t> positions;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex& v = vertices[i];
    if (v.id.side != side) {
      throw Error(ErrorKind::kInvalidArgument, "vertex " + to_string(v.id) + " listed on the wrong side");
    }
    if (!positions.emplace(v.id.index, i).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate vertex id " + to_string(v.id));
    }
    check_weight(v.scan_size, "scan size of " + to_string(v.id));
    if (v.inertia) check_weight(*v.inertia, "inertia of " + to_string(v.id));
  }
  return positions;
}

}  // namespace

ExchangeGraph ExchangeGraph::build(std::vector<Vertex> v1, std::vector<Vertex> v2,
                                   const std::vector<EdgeSpec>& edges) {
  const auto pos1 = index_side(v1, Side::kRobot1);
  const auto pos2 = index_side(v2, Side::kRobot2);

  struct Raw {
    std::size_t u, v;
    const Rational* cost;
  };
  std::vector<Raw> raw;
  raw.reserve(edges.size());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::vector<std::size_t> deg1(v1.size(), 0), deg2(v2.size(), 0);
  for (const EdgeSpec& e : edges) {
    auto iu = pos1.find(e.u);
    auto iv = pos2.find(e.v);
    if (iu == pos1.end() || iv == pos2.end()) {
      throw Error(ErrorKind::kIndexOutOfRange, "edge (" + std::to_string(e.u) + ", " +
                                                   std::to_string(e.v) + ") refers to a missing vertex");
    }
    check_weight(e.cost, "cost of edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    const std::uint64_t key = static_cast<std::uint64_t>(iu->second) * v2.size() + iv->second;
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::kDuplicateEdge,
                  "duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    raw.push_back({iu->second, iv->second, &e.cost});
    ++deg1[iu->second];
    ++deg2[iv->second];
  }

  ExchangeGraph g;
  std::vector<std::size_t> remap1(v1.size()), remap2(v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) {
    if (deg1[i] == 0) {
      g.pruned_.push_back(v1[i].id);
      continue;
    }
    remap1[i] = g.vertices_.size();
    g.vertices_.push_back(std::move(v1[i]));
  }
  g.n1_ = g.vertices_.size();
  for (std::size_t i = 0; i < v2.size(); ++i) {
    if (deg2[i] == 0) {
      g.pruned_.push_back(v2[i].id);
      continue;
    }
    remap2[i] = g.vertices_.size();
    g.vertices_.push_back(std::move(v2[i]));
  }

  g.edges_.reserve(raw.size());
  for (const Raw& r : raw) g.edges_.push_back({remap1[r.u], remap2[r.v], *r.cost});

  g.offsets_.assign(g.vertices_.size() + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    g.adjacency_[fill[g.edges_[k].u]++] = k;
    g.adjacency_[fill[g.edges_[k].v]++] = k;
  }
  return g;
}

std::span<const Vertex> ExchangeGraph::vertices(Side side) const {
  std::span<const Vertex> all(vertices_);
  return side == Side::kRobot1 ? all.first(n1_) : all.subspan(n1_);
}

std::optional<std::size_t> ExchangeGraph::find(const VertexId& id) const {
  auto side = vertices(id.side);
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (side[i].id.index == id.index) return dense_index(id.side, i);
  }
  return std::nullopt;
}

std::size_t ExchangeGraph::require(const VertexId& id) const {
  if (auto found = find(id)) return *found;
  throw Error(ErrorKind::kUnknownVertex, "vertex " + to_string(id) + " is not in the graph");
}

Rational ExchangeGraph::incident_cost(std::size_t dense) const {
  Rational total = 0;
  for (std::size_t k : incidence().incident(dense)) total += edges_[k].cost;
  return total;
}

bool operator==(const ExchangeGraph& a, const ExchangeGraph& b) {
  if (a.n1_ != b.n1_ || a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    const Vertex& x = a.vertices_[i];
    const Vertex& y = b.vertices_[i];
    if (x.id != y.id || x.scan_size != y.scan_size || x.inertia != y.inertia) return false;
  }
  for (std::size_t k = 0; k < a.edges_.size(); ++k) {
    const Edge& x = a.edges_[k];
    const Edge& y = b.edges_[k];
    if (x.u != y.u || x.v != y.v || x.cost != y.cost) return false;
  }
  return true;
}

ExchangeGraph build_graph(const std::vector<Rational>& v1_weights,
                          const std::vector<Rational>& v2_weights,
                          const std::vector<EdgeSpec>& edges) {
  std::vector<Vertex> v1, v2;
  v1.reserve(v1_weights.size());
  v2.reserve(v2_weights.size());
  for (std::size_t i = 0; i < v1_weights.size(); ++i) v1.push_back({{Side::kRobot1, i}, v1_weights[i], {}});
  for (std::size_t i = 0; i < v2_weights.size(); ++i) v2.push_back({{Side::kRobot2, i}, v2_weights[i], {}});
  return ExchangeGraph::build(std::move(v1), std::move(v2), edges);
}

Rational effective_weight(const ExchangeGraph& graph, std::size_t dense, const Objective& objective) {
  auto balance_weight = [&] {
    // Scans from robot 1 are verified by robot 2 and vice versa.
    const Rational& alpha = graph.side_of(dense) == Side::kRobot1 ? objective.alpha2 : objective.alpha1;
    return Rational(alpha * graph.incident_cost(dense));
  };
  switch (objective.variant) {
    case Variant::kP1:
      return balance_weight();
    case Variant::kP2:
      return graph.priced_scan_size(dense);
    case Variant::kP3:
      return graph.priced_scan_size(dense) + objective.omega * balance_weight();
  }
  return 0;
}

Rational effective_weight(const ExchangeGraph& graph, const VertexId& id, const Objective& objective) {
  return effective_weight(graph, graph.require(id), objective);
}

std::vector<Rational> effective_weights(const ExchangeGraph& graph, const Objective& objective) {
  std::vector<Rational> weights;
  weights.reserve(graph.vertex_count());
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) weights.push_back(effective_weight(graph, i, objective));
  return weights;
}

namespace {

std::vector<Vertex> parse_side(const detail::Json& root, const char* key, Side side) {
  std::vector<Vertex> out;
  for (const auto& item : detail::array_member(root, key)) {
    if (!item.is_object()) throw Error(ErrorKind::kParse, std::string("entries of '") + key + "' must be objects");
    Vertex v;
    v.id = {side, detail::index_member(item, "id")};
    v.scan_size = detail::rational_member(item, "scan_size");
    if (item.contains("inertia")) v.inertia = detail::rational_member(item, "inertia");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ExchangeGraph parse_graph_json(std::string_view text) {
  const detail::Json root = detail::parse_json_exact(text);
  if (!root.is_object()) throw Error(ErrorKind::kParse, "graph file must contain a JSON object");
  std::vector<Vertex> v1 = parse_side(root, "v1", Side::kRobot1);
  std::vector<Vertex> v2 = parse_side(root, "v2", Side::kRobot2);
  std::vector<EdgeSpec> edges;
  for (const auto& item : detail::array_member(root, "edges")) {
    if (!item.is_object()) throw Error(ErrorKind::kParse, "entries of 'edges' must be objects");
    edges.push_back({detail::index_member(item, "u"), detail::index_member(item, "v"),
                     detail::rational_member(item, "cost", Rational(1))});
  }
  return ExchangeGraph::build(std::move(v1), std::move(v2), edges);
}

std::string graph_to_json(const ExchangeGraph& graph) {
  std::ostringstream out;
  auto write_side = [&](Side side) {
    auto vs = graph.vertices(side);
    out << "  \"v" << robot_number(side) << "\": [";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      out << (i ? ",\n    " : "\n    ") << "{\"id\": " << vs[i].id.index
          << ", \"scan_size\": " << detail::json_number(vs[i].scan_size);
      if (vs[i].inertia) out << ", \"inertia\": " << detail::json_number(*vs[i].inertia);
      out << "}";
    }
    out << (vs.empty() ? "]" : "\n  ]");
  };
  out << "{\n";
  write_side(Side::kRobot1);
  out << ",\n";
  write_side(Side::kRobot2);
  out << ",\n  \"edges\": [";
  auto edges = graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out << (k ? ",\n    " : "\n    ") << "{\"u\": " << graph.vertex(edges[k].u).id.index
        << ", \"v\": " << graph.vertex(edges[k].v).id.index << ", \"cost\": " << detail::json_number(edges[k].cost)
        << "}";
  }
  out << (edges.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

ExchangeGraph load_graph(const std::string& path) { return parse_graph_json(detail::read_file(path)); }

void save_graph(const ExchangeGraph& graph, const std::string& path) {
  detail::write_file(path, graph_to_json(graph));
}

}  // namespace odx
