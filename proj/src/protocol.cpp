#include "odx/protocol.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>

#include "odx/error.hpp"
#include "odx/solver.hpp"

namespace odx {

const char* to_string(Actor actor) noexcept {
  switch (actor) {
    case Actor::kRobot1: return "robot1";
    case Actor::kRobot2: return "robot2";
    case Actor::kBroker: return "broker";
  }
  return "?";
}

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::kMetadata: return "metadata";
    case Phase::kScan: return "scan";
    case Phase::kClosure: return "closure";
  }
  return "?";
}

const char* to_string(BrokerPlacement placement) noexcept {
  switch (placement) {
    case BrokerPlacement::kThirdParty: return "third-party";
    case BrokerPlacement::kRobot1: return "robot1";
    case BrokerPlacement::kRobot2: return "robot2";
  }
  return "?";
}

BrokerPlacement parse_broker_placement(const std::string& text) {
  if (text == "third-party") return BrokerPlacement::kThirdParty;
  if (text == "robot1") return BrokerPlacement::kRobot1;
  if (text == "robot2") return BrokerPlacement::kRobot2;
  throw Error(ErrorKind::kInvalidArgument, "broker placement must be third-party, robot1 or robot2");
}

const char* to_string(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::kOptimal: return "optimal";
    case Strategy::kMonolog1: return "monolog1";
    case Strategy::kMonolog2: return "monolog2";
    case Strategy::kFullBidirectional: return "full_bidirectional";
  }
  return "?";
}

namespace {

Actor actor_of(Side side) { return side == Side::kRobot1 ? Actor::kRobot1 : Actor::kRobot2; }

Rational ceil_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return Rational(q);
}

Rational vertex_metadata(const RendezvousConfig& config, const Vertex& v) {
  if (config.metadata_bytes_per_vertex) return *config.metadata_bytes_per_vertex;
  return ceil_rational(v.scan_size * config.metadata_word_bytes / config.descriptor_bytes);
}

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> sorted_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> sorted_union(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string edge_name(const ExchangeGraph& graph, std::size_t k) {
  const Edge& e = graph.edges()[k];
  return to_string(graph.vertex(e.u).id) + "-" + to_string(graph.vertex(e.v).id);
}

std::vector<std::size_t> normalized_ground_truth(const ExchangeGraph& graph, const RendezvousConfig& config) {
  std::vector<std::size_t> truth = config.ground_truth;
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
  if (!truth.empty() && truth.back() >= graph.edge_count()) {
    throw Error(ErrorKind::kGroundTruthOutsideCandidates, "ground-truth closure is not a candidate edge");
  }
  return truth;
}

}  // namespace

RendezvousTrace run_with_policy(const ExchangeGraph& graph, const RendezvousConfig& config, const Policy& policy,
                                bool consult_broker) {
  config.objective.validate();
  const std::vector<std::size_t> truth = normalized_ground_truth(graph, config);
  if (!is_admissible(graph, policy)) {
    throw Error(ErrorKind::kInadmissiblePolicy, "the rendezvous requires an admissible policy");
  }

  RendezvousTrace trace;
  trace.policy = policy;
  trace.metadata_bytes = 0;
  trace.scan_bytes = 0;
  trace.closure_bytes = 0;

  // Round 1: metadata to the broker.
  if (consult_broker) {
    for (Side side : {Side::kRobot1, Side::kRobot2}) {
      Rational bytes = 0;
      for (const Vertex& v : graph.vertices(side)) bytes += vertex_metadata(config, v);
      const bool colocated = (side == Side::kRobot1 && config.broker == BrokerPlacement::kRobot1) ||
                             (side == Side::kRobot2 && config.broker == BrokerPlacement::kRobot2);
      std::string summary = std::to_string(graph.size(side)) + " vertices";
      if (colocated) {
        bytes = 0;
        summary += " (co-located broker)";
      }
      trace.metadata_bytes += bytes;
      trace.messages.push_back({Phase::kMetadata, actor_of(side), Actor::kBroker, bytes, summary});
    }
  }

  // Round 2: scans, in deterministic execution order.
  for (const Transmission& t : execute_order(graph, policy)) {
    trace.scan_bytes += t.bytes;
    trace.messages.push_back(
        {Phase::kScan, actor_of(t.vertex.side), actor_of(t.destination), t.bytes, "scan " + to_string(t.vertex)});
  }

  // Verification: each robot screens the candidates it now holds both scans of.
  const WorkloadReport work = workloads(graph, policy, config.objective.alpha1, config.objective.alpha2);
  trace.verified1 = work.l1_edges;
  trace.verified2 = work.l2_edges;
  trace.ell1 = work.ell1;
  trace.ell2 = work.ell2;
  trace.discovered1 = sorted_intersection(trace.verified1, truth);
  trace.discovered2 = sorted_intersection(trace.verified2, truth);
  trace.discovered_both = sorted_intersection(trace.discovered1, trace.discovered2);

  // Round 3: share what the other robot could not have found itself.
  const std::vector<std::size_t> share1 = sorted_difference(trace.discovered1, trace.discovered_both);
  const std::vector<std::size_t> share2 = sorted_difference(trace.discovered2, trace.discovered_both);
  trace.known1 = trace.discovered1;
  trace.known2 = trace.discovered2;
  if (config.channel_alive_after_exchange) {
    for (auto [from, share] : {std::pair{Side::kRobot1, &share1}, std::pair{Side::kRobot2, &share2}}) {
      for (std::size_t k : *share) {
        const Rational bytes(config.closure_bytes);
        trace.closure_bytes += bytes;
        trace.messages.push_back(
            {Phase::kClosure, actor_of(from), actor_of(other(from)), bytes, "closure " + edge_name(graph, k)});
      }
    }
    trace.known1 = sorted_union(trace.known1, share2);
    trace.known2 = sorted_union(trace.known2, share1);
  } else {
    trace.undelivered1 = share1;
    trace.undelivered2 = share2;
  }
  return trace;
}

RendezvousTrace run_rendezvous(const ExchangeGraph& graph, const RendezvousConfig& config) {
  normalized_ground_truth(graph, config);
  const SolveResult solved = solve(graph, config.objective);
  return run_with_policy(graph, config, solved.policy, true);
}

std::vector<StrategyRow> compare_strategies(const ExchangeGraph& graph, const RendezvousConfig& config) {
  std::vector<StrategyRow> rows;
  auto add = [&](Strategy strategy, const Policy& policy, bool broker) {
    const RendezvousTrace t = run_with_policy(graph, config, policy, broker);
    rows.push_back({strategy, t.scan_bytes, t.metadata_bytes, t.ell1, t.ell2,
                    objective_cost(graph, policy, config.objective)});
  };
  add(Strategy::kOptimal, solve(graph, config.objective).policy, true);
  add(Strategy::kMonolog1, monolog(graph, Side::kRobot1), false);
  add(Strategy::kMonolog2, monolog(graph, Side::kRobot2), false);
  add(Strategy::kFullBidirectional, Policy::ones(graph.vertex_count()), false);
  return rows;
}

std::string trace_log(const ExchangeGraph& graph, const RendezvousTrace& trace) {
  std::ostringstream out;
  for (const Message& m : trace.messages) {
    out << to_string(m.phase) << ' ' << to_string(m.from) << ' ' << to_string(m.to) << ' ' << to_string(m.bytes)
        << ' ' << m.summary << '\n';
  }
  auto list = [&](const std::vector<std::size_t>& edges) {
    std::string s;
    for (std::size_t k : edges) s += (s.empty() ? "" : ",") + edge_name(graph, k);
    return s.empty() ? std::string("-") : s;
  };
  if (!trace.undelivered1.empty() || !trace.undelivered2.empty()) {
    out << "undelivered robot1 " << list(trace.undelivered1) << '\n';
    out << "undelivered robot2 " << list(trace.undelivered2) << '\n';
  }
  out << "total metadata " << to_string(trace.metadata_bytes) << '\n';
  out << "total scan " << to_string(trace.scan_bytes) << '\n';
  out << "total closure " << to_string(trace.closure_bytes) << '\n';
  out << "workload robot1 " << to_string(trace.ell1) << '\n';
  out << "workload robot2 " << to_string(trace.ell2) << '\n';
  return out.str();
}

std::string strategies_csv(const std::vector<StrategyRow>& rows) {
  std::ostringstream out;
  out << "strategy,scan_bytes,metadata_bytes,ell1,ell2,objective\n";
  for (const StrategyRow& r : rows) {
    out << to_string(r.strategy) << ',' << to_string(r.scan_bytes) << ',' << to_string(r.metadata_bytes) << ','
        << to_string(r.ell1) << ',' << to_string(r.ell2) << ',' << to_string(r.objective) << '\n';
  }
  return out.str();
}

std::vector<std::size_t> parse_ground_truth(const ExchangeGraph& graph, const std::string& text) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> lookup;
  const auto edges = graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    lookup.emplace(std::pair{graph.vertex(edges[k].u).id.index, graph.vertex(edges[k].v).id.index}, k);
  }
  std::vector<std::size_t> truth;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0) {
      throw Error(ErrorKind::kParse, "ground truth line " + std::to_string(number) + ": expected 'u v'");
    }
    auto it = lookup.find({static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)});
    if (it == lookup.end()) {
      throw Error(ErrorKind::kGroundTruthOutsideCandidates,
                  "ground truth (" + std::to_string(u) + ", " + std::to_string(v) + ") is not a candidate edge");
    }
    truth.push_back(it->second);
  }
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
  return truth;
}

}  // namespace odx
