#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "odx/graph.hpp"
#include "odx/objective.hpp"
#include "odx/rational.hpp"

namespace odx {

// Binary labeling of a graph's vertices in dense order; label 1 means the
// vertex's scan is transmitted to the other robot.
class Policy {
 public:
  Policy() = default;
  explicit Policy(std::vector<std::uint8_t> labels);
  static Policy zeros(std::size_t vertex_count) { return Policy(std::vector<std::uint8_t>(vertex_count, 0)); }
  static Policy ones(std::size_t vertex_count) { return Policy(std::vector<std::uint8_t>(vertex_count, 1)); }

  std::size_t size() const { return labels_.size(); }
  bool operator[](std::size_t dense) const { return labels_[dense] != 0; }
  void set(std::size_t dense, bool bit) { labels_[dense] = bit ? 1 : 0; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }
  std::size_t count() const;

  bool operator==(const Policy&) const = default;

 private:
  std::vector<std::uint8_t> labels_;
};

// Ids of labeled-1 vertices in ascending (side, index) order.
std::vector<VertexId> transmitted(const ExchangeGraph& graph, const Policy& policy);

// Throws Error(kLabelDomainMismatch) unless policy labels exactly the graph's
// vertices.
void check_domain(const ExchangeGraph& graph, const Policy& policy);

// Every edge has at least one endpoint labeled 1.
bool is_admissible(const ExchangeGraph& graph, const Policy& policy);

// Throws Error(kEmptySide) if the chosen side has no vertices.
Policy monolog(const ExchangeGraph& graph, Side source);

// f_wifi: sum of (inertia-priced) scan sizes over labeled-1 vertices.
Rational comm_cost(const ExchangeGraph& graph, const Policy& policy);

struct WorkloadReport {
  // Edge indices, ascending. l1_edges are verified by robot 1 (they touch a
  // transmitted robot-2 scan), l2_edges by robot 2.
  std::vector<std::size_t> l1_edges;
  std::vector<std::size_t> l2_edges;
  std::vector<std::size_t> l12_edges;
  Rational ell1;
  Rational ell2;
  Rational balance;  // alpha1 * ell1 + alpha2 * ell2
};

// Throws Error(kInadmissiblePolicy).
WorkloadReport workloads(const ExchangeGraph& graph, const Policy& policy, const Rational& alpha1,
                         const Rational& alpha2);

Rational objective_cost(const ExchangeGraph& graph, const Policy& policy, const Objective& objective);

struct Transmission {
  VertexId vertex;
  Side destination;
  Rational bytes;
};

// Deterministic execution of a policy: one transmission per labeled-1
// vertex, ascending (side, index). Bytes are physical scan sizes.
std::vector<Transmission> execute_order(const ExchangeGraph& graph, const Policy& policy);

// Policy file: {"labels": [{"side": 1, "index": 0, "bit": 1}, ...]}.
std::string policy_to_json(const ExchangeGraph& graph, const Policy& policy);
// Throws Error(kParse) on malformed text and kLabelDomainMismatch when the
// labels do not cover the graph's vertices exactly.
Policy parse_policy_json(const ExchangeGraph& graph, std::string_view text);
Policy load_policy(const ExchangeGraph& graph, const std::string& path);
void save_policy(const ExchangeGraph& graph, const Policy& policy, const std::string& path);

}  // namespace odx
