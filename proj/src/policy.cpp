#include "odx/policy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json_text.hpp"
#include "odx/error.hpp"

namespace odx {

Policy::Policy(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  for (auto& bit : labels_) {
    if (bit > 1) throw Error(ErrorKind::kInvalidArgument, "policy labels must be 0 or 1");
  }
}

std::size_t Policy::count() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

std::vector<VertexId> transmitted(const ExchangeGraph& graph, const Policy& policy) {
  check_domain(graph, policy);
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (policy[i]) ids.push_back(graph.vertex(i).id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void check_domain(const ExchangeGraph& graph, const Policy& policy) {
  if (policy.size() != graph.vertex_count()) {
    throw Error(ErrorKind::kLabelDomainMismatch,
                "policy labels " + std::to_string(policy.size()) + " vertices, graph has " +
                    std::to_string(graph.vertex_count()));
  }
}

bool is_admissible(const ExchangeGraph& graph, const Policy& policy) {
  check_domain(graph, policy);
  return std::all_of(graph.edges().begin(), graph.edges().end(),
                     [&](const Edge& e) { return policy[e.u] || policy[e.v]; });
}

Policy monolog(const ExchangeGraph& graph, Side source) {
  if (graph.size(source) == 0) {
    throw Error(ErrorKind::kEmptySide, "robot " + std::to_string(robot_number(source)) + " has no vertices");
  }
  Policy p = Policy::zeros(graph.vertex_count());
  for (std::size_t i = 0; i < graph.size(source); ++i) p.set(graph.dense_index(source, i), true);
  return p;
}

Rational comm_cost(const ExchangeGraph& graph, const Policy& policy) {
  check_domain(graph, policy);
  Rational total = 0;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (policy[i]) total += graph.priced_scan_size(i);
  }
  return total;
}

WorkloadReport workloads(const ExchangeGraph& graph, const Policy& policy, const Rational& alpha1,
                         const Rational& alpha2) {
  if (!is_admissible(graph, policy)) {
    throw Error(ErrorKind::kInadmissiblePolicy, "workload partition requires an admissible policy");
  }
  WorkloadReport report;
  report.ell1 = 0;
  report.ell2 = 0;
  auto edges = graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    const bool robot1_verifies = policy[e.v];  // robot 2's scan reached robot 1
    const bool robot2_verifies = policy[e.u];
    if (robot1_verifies) {
      report.l1_edges.push_back(k);
      report.ell1 += e.cost;
    }
    if (robot2_verifies) {
      report.l2_edges.push_back(k);
      report.ell2 += e.cost;
    }
    if (robot1_verifies && robot2_verifies) report.l12_edges.push_back(k);
  }
  report.balance = alpha1 * report.ell1 + alpha2 * report.ell2;
  return report;
}

Rational objective_cost(const ExchangeGraph& graph, const Policy& policy, const Objective& objective) {
  check_domain(graph, policy);
  Rational total = 0;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (policy[i]) total += effective_weight(graph, i, objective);
  }
  return total;
}

std::vector<Transmission> execute_order(const ExchangeGraph& graph, const Policy& policy) {
  if (!is_admissible(graph, policy)) {
    throw Error(ErrorKind::kInadmissiblePolicy, "only admissible policies can be executed");
  }
  std::vector<Transmission> order;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (!policy[i]) continue;
    const Vertex& v = graph.vertex(i);
    order.push_back({v.id, other(v.id.side), v.scan_size});
  }
  std::sort(order.begin(), order.end(),
            [](const Transmission& a, const Transmission& b) { return a.vertex < b.vertex; });
  return order;
}

std::string policy_to_json(const ExchangeGraph& graph, const Policy& policy) {
  check_domain(graph, policy);
  std::vector<std::size_t> order(graph.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return graph.vertex(a).id < graph.vertex(b).id; });
  std::ostringstream out;
  out << "{\n  \"labels\": [";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const VertexId& id = graph.vertex(order[k]).id;
    out << (k ? ",\n    " : "\n    ") << "{\"side\": " << robot_number(id.side) << ", \"index\": " << id.index
        << ", \"bit\": " << (policy[order[k]] ? 1 : 0) << "}";
  }
  out << (order.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

Policy parse_policy_json(const ExchangeGraph& graph, std::string_view text) {
  const detail::Json root = detail::parse_json_exact(text);
  if (!root.is_object()) throw Error(ErrorKind::kParse, "policy file must contain a JSON object");

  std::map<VertexId, std::size_t> lookup;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) lookup.emplace(graph.vertex(i).id, i);

  std::vector<std::uint8_t> labels(graph.vertex_count(), 0);
  std::vector<bool> seen(graph.vertex_count(), false);
  for (const auto& item : detail::array_member(root, "labels")) {
    if (!item.is_object()) throw Error(ErrorKind::kParse, "entries of 'labels' must be objects");
    const std::uint64_t side = detail::index_member(item, "side");
    const std::uint64_t bit = detail::index_member(item, "bit");
    if (side != 1 && side != 2) throw Error(ErrorKind::kParse, "label side must be 1 or 2");
    if (bit > 1) throw Error(ErrorKind::kParse, "label bit must be 0 or 1");
    const VertexId id{side == 1 ? Side::kRobot1 : Side::kRobot2, detail::index_member(item, "index")};
    auto it = lookup.find(id);
    if (it == lookup.end()) {
      throw Error(ErrorKind::kLabelDomainMismatch, "policy labels unknown vertex " + to_string(id));
    }
    if (seen[it->second]) {
      throw Error(ErrorKind::kLabelDomainMismatch, "vertex " + to_string(id) + " labeled twice");
    }
    seen[it->second] = true;
    labels[it->second] = static_cast<std::uint8_t>(bit);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorKind::kLabelDomainMismatch, "policy has no label for " + to_string(graph.vertex(i).id));
    }
  }
  return Policy(std::move(labels));
}

Policy load_policy(const ExchangeGraph& graph, const std::string& path) {
  return parse_policy_json(graph, detail::read_file(path));
}

void save_policy(const ExchangeGraph& graph, const Policy& policy, const std::string& path) {
  detail::write_file(path, policy_to_json(graph, policy));
}

}  // namespace odx
