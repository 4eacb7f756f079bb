#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "odx/graph.hpp"
#include "odx/objective.hpp"
#include "odx/policy.hpp"
#include "odx/rational.hpp"

namespace odx {

enum class Method { kFlowCut, kMatching, kBruteForce, kClosedForm };

const char* to_string(Method method) noexcept;

// An optimal admissible policy together with a dual certificate. `dual`
// assigns y_e >= 0 to every edge with sum over edges at v of y_e <= w(v);
// its total equals optimal_cost, which proves optimality by weak duality.
struct SolveResult {
  Policy policy;
  Rational optimal_cost;
  Method method = Method::kFlowCut;
  Rational certificate_value;
  std::vector<Rational> dual;          // per edge; empty for brute force
  std::vector<std::size_t> matching;   // matched edge indices (matching method)
};

// Exact minimum-weight vertex cover under the objective's effective weights,
// computed as a minimum cut. Among optimal covers the one with the largest
// robot-1 part (equivalently the smallest robot-2 part) is returned.
SolveResult solve(const ExchangeGraph& graph, const Objective& objective);

// Same, for caller-supplied weights in dense order.
SolveResult solve_weighted(const ExchangeGraph& graph, std::span<const Rational> weights);

// König route for uniform effective weights. Throws Error(kNonUniformWeights).
SolveResult solve_uniform_matching(const ExchangeGraph& graph, const Objective& objective = Objective::p2());

// Exhaustive search over all 2^|V| labelings; refuses graphs with more than
// 24 vertices (kInvalidArgument).
SolveResult solve_brute_force(const ExchangeGraph& graph, const Objective& objective);

// Monolog from the robot with the larger alpha (robot 1 on ties); optimal for
// P1 with cost min(alpha1, alpha2) * sum of edge costs.
SolveResult p1_closed_form(const ExchangeGraph& graph, const Rational& alpha1, const Rational& alpha2);

// Maximum-cardinality matching (Hopcroft-Karp); returns edge indices.
std::vector<std::size_t> maximum_matching(const ExchangeGraph& graph);

// True iff the primal is admissible, the dual is feasible for `weights`, and
// both have the same value.
bool verify_certificate(const ExchangeGraph& graph, std::span<const Rational> weights, const SolveResult& result);

struct GhcCertificate {
  Side side = Side::kRobot1;
  bool holds = true;
  // Violating subset S of the chosen side and its neighbourhood N(S); empty
  // when the condition holds.
  std::vector<VertexId> witness;
  std::vector<VertexId> neighborhood;
  Rational witness_weight;
  Rational neighborhood_weight;
  Rational monolog_cost;
  Rational optimal_cost;
  // (side \ S) + N(S) when violated, otherwise the monolog itself.
  Policy improving_policy;
  Rational improving_cost;
};

// Decides the generalized Hall condition for the monolog from `side` under
// the objective's effective weights: the monolog is optimal iff it holds.
GhcCertificate check_ghc(const ExchangeGraph& graph, const Objective& objective, Side side);

// Hall's condition for uniform weights: some matching saturates `side`.
// Throws Error(kNonUniformWeights).
bool check_hall_uniform(const ExchangeGraph& graph, Side side, const Objective& objective = Objective::p2());

}  // namespace odx
