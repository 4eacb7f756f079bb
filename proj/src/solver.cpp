#include "odx/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <type_traits>
#include <queue>

#include "max_flow.hpp"
#include "odx/error.hpp"

namespace odx {

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::kFlowCut: return "flow_cut";
    case Method::kMatching: return "matching";
    case Method::kBruteForce: return "brute_force";
    case Method::kClosedForm: return "closed_form";
  }
  return "?";
}

namespace {

struct ScaledWeights {
  std::vector<BigInt> values;
  BigInt denominator;
  BigInt total;
};

ScaledWeights scale_to_integers(std::span<const Rational> weights) {
  ScaledWeights out;
  out.denominator = 1;
  for (const Rational& w : weights) {
    out.denominator = boost::multiprecision::lcm(out.denominator, boost::multiprecision::denominator(w));
  }
  out.total = 0;
  out.values.reserve(weights.size());
  for (const Rational& w : weights) {
    BigInt v = boost::multiprecision::numerator(w) * (out.denominator / boost::multiprecision::denominator(w));
    out.total += v;
    out.values.push_back(std::move(v));
  }
  return out;
}

template <typename Cap>
SolveResult min_cut_cover(const ExchangeGraph& graph, const ScaledWeights& scaled) {
  const std::size_t n = graph.vertex_count();
  const std::size_t source = n, sink = n + 1;
  const std::size_t n1 = graph.size(Side::kRobot1);
  detail::MaxFlow<Cap> network(n + 2);
  auto cap = [](const BigInt& v) {
    if constexpr (std::is_same_v<Cap, BigInt>) {
      return v;
    } else {
      return v.template convert_to<Cap>();
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n1) {
      network.add_arc(source, i, cap(scaled.values[i]));
    } else {
      network.add_arc(i, sink, cap(scaled.values[i]));
    }
  }
  // No finite cut can afford a middle arc of this capacity.
  const Cap infinite = cap(scaled.total + 1);
  std::vector<std::size_t> middle;
  middle.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) middle.push_back(network.add_arc(e.u, e.v, infinite));

  const Cap flow_value = network.run(source, sink);
  const std::vector<bool> reachable = network.residual_reachable(source);

  SolveResult result;
  result.method = Method::kFlowCut;
  result.policy = Policy::zeros(n);
  Rational cost = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_cover = i < n1 ? !reachable[i] : reachable[i];
    if (in_cover) {
      result.policy.set(i, true);
      cost += Rational(scaled.values[i], scaled.denominator);
    }
  }
  result.optimal_cost = cost;
  result.certificate_value = Rational(BigInt(flow_value), scaled.denominator);
  result.dual.reserve(middle.size());
  for (std::size_t arc : middle) result.dual.emplace_back(BigInt(network.flow(arc)), scaled.denominator);
  if (result.certificate_value != result.optimal_cost) {
    throw Error(ErrorKind::kInvariantViolation, "min cut weight differs from max flow value");
  }
  return result;
}

void require_uniform(std::span<const Rational> weights) {
  for (const Rational& w : weights) {
    if (w != weights.front()) {
      throw Error(ErrorKind::kNonUniformWeights, "effective weights are not uniform");
    }
  }
}

}  // namespace

SolveResult solve_weighted(const ExchangeGraph& graph, std::span<const Rational> weights) {
  if (weights.size() != graph.vertex_count()) {
    throw Error(ErrorKind::kLabelDomainMismatch, "weight vector does not match the graph");
  }
  for (const Rational& w : weights) {
    if (w < 0) throw Error(ErrorKind::kNegativeWeight, "vertex weights must be non-negative");
  }
  const ScaledWeights scaled = scale_to_integers(weights);
  // Max flow never exceeds total + 1 on any arc; keep a factor of four headroom.
  static const BigInt kInt64Limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4);
  if (scaled.total < kInt64Limit) return min_cut_cover<std::int64_t>(graph, scaled);
  return min_cut_cover<BigInt>(graph, scaled);
}

SolveResult solve(const ExchangeGraph& graph, const Objective& objective) {
  objective.validate();
  const std::vector<Rational> weights = effective_weights(graph, objective);
  return solve_weighted(graph, weights);
}

std::vector<std::size_t> maximum_matching(const ExchangeGraph& graph) {
  const std::size_t n1 = graph.size(Side::kRobot1);
  const std::size_t n2 = graph.size(Side::kRobot2);
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  const auto edges = graph.edges();
  const IncidenceView incidence = graph.incidence();
  std::vector<std::size_t> mate1(n1, kFree), mate2(n2, kFree);  // matched edge per vertex
  std::vector<std::size_t> dist(n1);

  auto partner2 = [&](std::size_t k) { return edges[k].v - n1; };

  auto bfs = [&] {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < n1; ++u) {
      if (mate1[u] == kFree) {
        dist[u] = 0;
        queue.push(u);
      } else {
        dist[u] = kFree;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t k : incidence.incident(u)) {
        const std::size_t v = partner2(k);
        if (mate2[v] == kFree) {
          found = true;
        } else {
          const std::size_t w = edges[mate2[v]].u;
          if (dist[w] == kFree) {
            dist[w] = dist[u] + 1;
            queue.push(w);
          }
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> cursor(n1);
  // Iterative DFS along the BFS layers.
  auto dfs = [&](std::size_t root) {
    std::vector<std::pair<std::size_t, std::size_t>> stack;  // (u, edge used to reach next)
    std::size_t u = root;
    while (true) {
      bool moved = false;
      auto inc = incidence.incident(u);
      for (; cursor[u] < inc.size(); ++cursor[u]) {
        const std::size_t k = inc[cursor[u]];
        const std::size_t v = partner2(k);
        if (mate2[v] == kFree) {
          // Flip the alternating path root .. u -> v.
          stack.emplace_back(u, k);
          for (auto& [x, e] : stack) {
            mate1[x] = e;
            mate2[partner2(e)] = e;
          }
          return true;
        }
        const std::size_t w = edges[mate2[v]].u;
        if (dist[w] == dist[u] + 1) {
          stack.emplace_back(u, k);
          ++cursor[u];
          u = w;
          moved = true;
          break;
        }
      }
      if (moved) continue;
      dist[u] = kFree;
      if (stack.empty()) return false;
      u = stack.back().first;
      stack.pop_back();
    }
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::size_t u = 0; u < n1; ++u) {
      if (mate1[u] == kFree) dfs(u);
    }
  }
  (void)n2;
  std::vector<std::size_t> matched;
  for (std::size_t u = 0; u < n1; ++u) {
    if (mate1[u] != kFree) matched.push_back(mate1[u]);
  }
  std::sort(matched.begin(), matched.end());
  return matched;
}

SolveResult solve_uniform_matching(const ExchangeGraph& graph, const Objective& objective) {
  objective.validate();
  const std::vector<Rational> weights = effective_weights(graph, objective);
  require_uniform(weights);
  const Rational unit = weights.empty() ? Rational(0) : weights.front();

  const std::size_t n1 = graph.size(Side::kRobot1);
  const auto edges = graph.edges();
  const IncidenceView incidence = graph.incidence();
  std::vector<std::size_t> matched = maximum_matching(graph);
  std::vector<bool> edge_matched(graph.edge_count(), false);
  std::vector<bool> vertex_matched(graph.vertex_count(), false);
  for (std::size_t k : matched) {
    edge_matched[k] = true;
    vertex_matched[edges[k].u] = vertex_matched[edges[k].v] = true;
  }

  // König: Z = vertices reachable from unmatched robot-1 vertices by
  // alternating paths; (V1 \ Z) + (V2 & Z) is a minimum cover.
  std::vector<bool> in_z(graph.vertex_count(), false);
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < n1; ++u) {
    if (!vertex_matched[u]) {
      in_z[u] = true;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t k : incidence.incident(x)) {
      const bool forward = x < n1;
      if (forward == edge_matched[k]) continue;  // V1->V2 on free edges, V2->V1 on matched
      const std::size_t y = forward ? edges[k].v : edges[k].u;
      if (!in_z[y]) {
        in_z[y] = true;
        stack.push_back(y);
      }
    }
  }

  SolveResult result;
  result.method = Method::kMatching;
  result.policy = Policy::zeros(graph.vertex_count());
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    result.policy.set(i, i < n1 ? !in_z[i] : in_z[i]);
  }
  result.optimal_cost = unit * static_cast<long long>(result.policy.count());
  result.certificate_value = unit * static_cast<long long>(matched.size());
  result.dual.assign(graph.edge_count(), Rational(0));
  for (std::size_t k : matched) result.dual[k] = unit;
  result.matching = std::move(matched);
  if (result.optimal_cost != result.certificate_value) {
    throw Error(ErrorKind::kInvariantViolation, "König cover size differs from matching size");
  }
  return result;
}

SolveResult solve_brute_force(const ExchangeGraph& graph, const Objective& objective) {
  objective.validate();
  const std::size_t n = graph.vertex_count();
  if (n > 24) throw Error(ErrorKind::kInvalidArgument, "brute force is limited to 24 vertices");
  const std::vector<Rational> weights = effective_weights(graph, objective);
  const auto edges = graph.edges();

  std::optional<std::uint32_t> best_mask;
  Rational best_cost;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool admissible = true;
    for (const Edge& e : edges) {
      if (!((mask >> e.u) & 1U) && !((mask >> e.v) & 1U)) {
        admissible = false;
        break;
      }
    }
    if (!admissible) continue;
    Rational cost = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) cost += weights[i];
    }
    if (!best_mask || cost < best_cost) {
      best_mask = mask;
      best_cost = cost;
    }
  }
  SolveResult result;
  result.method = Method::kBruteForce;
  result.policy = Policy::zeros(n);
  for (std::size_t i = 0; i < n; ++i) result.policy.set(i, (*best_mask >> i) & 1U);
  result.optimal_cost = best_cost;
  result.certificate_value = best_cost;
  return result;
}

SolveResult p1_closed_form(const ExchangeGraph& graph, const Rational& alpha1, const Rational& alpha2) {
  const Objective objective = Objective::p1(alpha1, alpha2);
  const Side richer = alpha2 > alpha1 ? Side::kRobot2 : Side::kRobot1;
  const Rational& smaller = alpha2 > alpha1 ? alpha1 : alpha2;

  SolveResult result;
  result.method = Method::kClosedForm;
  result.policy = monolog(graph, richer);
  result.optimal_cost = objective_cost(graph, result.policy, objective);
  // y_e = min(alpha) * c_e is dual feasible at both endpoints.
  Rational total = 0;
  result.dual.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    result.dual.push_back(smaller * e.cost);
    total += result.dual.back();
  }
  result.certificate_value = total;
  if (total != result.optimal_cost) {
    throw Error(ErrorKind::kInvariantViolation, "closed-form P1 cost differs from its dual bound");
  }
  return result;
}

bool verify_certificate(const ExchangeGraph& graph, std::span<const Rational> weights, const SolveResult& result) {
  if (weights.size() != graph.vertex_count() || result.dual.size() != graph.edge_count()) return false;
  if (!is_admissible(graph, result.policy)) return false;
  Rational primal = 0;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (result.policy[i]) primal += weights[i];
  }
  std::vector<Rational> load(graph.vertex_count(), Rational(0));
  Rational dual_total = 0;
  const auto edges = graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (result.dual[k] < 0) return false;
    load[edges[k].u] += result.dual[k];
    load[edges[k].v] += result.dual[k];
    dual_total += result.dual[k];
  }
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (load[i] > weights[i]) return false;
  }
  return primal == dual_total && primal == result.optimal_cost;
}

GhcCertificate check_ghc(const ExchangeGraph& graph, const Objective& objective, Side side) {
  objective.validate();
  const std::vector<Rational> weights = effective_weights(graph, objective);
  const SolveResult best = solve_weighted(graph, weights);

  GhcCertificate cert;
  cert.side = side;
  cert.optimal_cost = best.optimal_cost;
  cert.monolog_cost = 0;
  const std::size_t count = graph.size(side);
  for (std::size_t p = 0; p < count; ++p) cert.monolog_cost += weights[graph.dense_index(side, p)];
  cert.holds = cert.monolog_cost == cert.optimal_cost;
  cert.witness_weight = 0;
  cert.neighborhood_weight = 0;

  Policy improved = Policy::zeros(graph.vertex_count());
  for (std::size_t p = 0; p < count; ++p) improved.set(graph.dense_index(side, p), true);
  if (!cert.holds) {
    // S = chosen-side vertices outside an optimal cover. Every edge at S is
    // covered from the far side, so N(S) sits inside the cover and
    // w(N(S)) <= w(cover) - w(side \ S) < w(side) - w(side \ S) = w(S).
    const IncidenceView incidence = graph.incidence();
    std::vector<bool> in_neighborhood(graph.vertex_count(), false);
    for (std::size_t p = 0; p < count; ++p) {
      const std::size_t d = graph.dense_index(side, p);
      if (best.policy[d]) continue;
      cert.witness.push_back(graph.vertex(d).id);
      cert.witness_weight += weights[d];
      improved.set(d, false);
      for (std::size_t k : incidence.incident(d)) {
        const Edge& e = graph.edges()[k];
        in_neighborhood[e.u == d ? e.v : e.u] = true;
      }
    }
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
      if (!in_neighborhood[i]) continue;
      cert.neighborhood.push_back(graph.vertex(i).id);
      cert.neighborhood_weight += weights[i];
      improved.set(i, true);
    }
    std::sort(cert.witness.begin(), cert.witness.end());
    std::sort(cert.neighborhood.begin(), cert.neighborhood.end());
    if (!(cert.witness_weight > cert.neighborhood_weight)) {
      throw Error(ErrorKind::kInvariantViolation, "recovered GHC witness does not violate the condition");
    }
  }
  cert.improving_cost = 0;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    if (improved[i]) cert.improving_cost += weights[i];
  }
  cert.improving_policy = std::move(improved);
  return cert;
}

bool check_hall_uniform(const ExchangeGraph& graph, Side side, const Objective& objective) {
  objective.validate();
  require_uniform(effective_weights(graph, objective));
  return maximum_matching(graph).size() == graph.size(side);
}

}  // namespace odx
