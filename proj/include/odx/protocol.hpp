#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odx/graph.hpp"
#include "odx/objective.hpp"
#include "odx/policy.hpp"
#include "odx/rational.hpp"

namespace odx {

enum class Actor { kRobot1, kRobot2, kBroker };
enum class Phase { kMetadata, kScan, kClosure };
// Where the broker runs. A co-located broker receives its host's metadata
// for free.
enum class BrokerPlacement { kThirdParty, kRobot1, kRobot2 };

const char* to_string(Actor actor) noexcept;
const char* to_string(Phase phase) noexcept;
const char* to_string(BrokerPlacement placement) noexcept;
BrokerPlacement parse_broker_placement(const std::string& text);

struct RendezvousConfig {
  Objective objective = Objective::p2();
  // Fixed metadata size per vertex; when unset each vertex costs
  // ceil(metadata_word_bytes * scan_size / descriptor_bytes), one
  // vocabulary word per descriptor.
  std::optional<Rational> metadata_bytes_per_vertex;
  std::uint64_t metadata_word_bytes = 3;
  std::uint64_t descriptor_bytes = 32;
  std::uint64_t closure_bytes = 64;
  // Edge indices of the candidates that are real loop closures.
  std::vector<std::size_t> ground_truth;
  bool channel_alive_after_exchange = true;
  BrokerPlacement broker = BrokerPlacement::kThirdParty;
};

struct Message {
  Phase phase;
  Actor from;
  Actor to;
  Rational bytes;
  std::string summary;
};

struct RendezvousTrace {
  Policy policy;
  std::vector<Message> messages;
  std::vector<std::size_t> verified1, verified2;      // L1^pi, L2^pi
  std::vector<std::size_t> discovered1, discovered2;  // closures each robot found
  std::vector<std::size_t> discovered_both;           // found by both robots
  // What each robot knows after the closure round.
  std::vector<std::size_t> known1, known2;
  // Closures that never reached the other robot (channel dropped).
  std::vector<std::size_t> undelivered1, undelivered2;
  Rational metadata_bytes;
  Rational scan_bytes;
  Rational closure_bytes;
  Rational ell1, ell2;

  Rational total_bytes() const { return metadata_bytes + scan_bytes + closure_bytes; }
};

// Runs the six rendezvous steps: metadata to the broker, graph formation,
// solve, scan exchange, verification against ground truth, closure swap.
// Throws Error(kGroundTruthOutsideCandidates).
RendezvousTrace run_rendezvous(const ExchangeGraph& graph, const RendezvousConfig& config);

// Same protocol with a caller-chosen admissible policy instead of the
// broker's optimum. `consult_broker` controls whether metadata is exchanged.
RendezvousTrace run_with_policy(const ExchangeGraph& graph, const RendezvousConfig& config, const Policy& policy,
                                bool consult_broker);

enum class Strategy { kOptimal, kMonolog1, kMonolog2, kFullBidirectional };
const char* to_string(Strategy strategy) noexcept;

struct StrategyRow {
  Strategy strategy;
  Rational scan_bytes;
  Rational metadata_bytes;
  Rational ell1, ell2;
  Rational objective;  // objective cost of the strategy's policy
};

std::vector<StrategyRow> compare_strategies(const ExchangeGraph& graph, const RendezvousConfig& config);

// `phase from to bytes summary`, one message per line.
std::string trace_log(const ExchangeGraph& graph, const RendezvousTrace& trace);
std::string strategies_csv(const std::vector<StrategyRow>& rows);

// Ground-truth file: lines "u v" naming candidate edges by vertex index.
std::vector<std::size_t> parse_ground_truth(const ExchangeGraph& graph, const std::string& text);

}  // namespace odx
