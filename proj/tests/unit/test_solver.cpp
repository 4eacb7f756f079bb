#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "odx/error.hpp"
#include "odx/policy.hpp"
#include "odx/solver.hpp"

using odx::Rational;
using odx::Side;

namespace {

std::uint64_t mask_of(const odx::Policy& p) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) m |= std::uint64_t{p[i]} << i;
  return m;
}

// Dual feasibility and value checked from scratch.
void check_dual(const odx::ExchangeGraph& g, const std::vector<Rational>& w, const odx::SolveResult& r) {
  REQUIRE(r.dual.size() == g.edge_count());
  std::vector<Rational> load(g.vertex_count(), 0);
  Rational total = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    CHECK(r.dual[e] >= 0);
    load[g.edges()[e].u] += r.dual[e];
    load[g.edges()[e].v] += r.dual[e];
    total += r.dual[e];
  }
  for (std::size_t d = 0; d < g.vertex_count(); ++d) CHECK(load[d] <= w[d]);
  CHECK(total == r.optimal_cost);
}

}  // namespace

TEST_CASE("double star") {
  const auto g = oracle::build(oracle::fig2());
  const auto r = odx::solve(g, odx::Objective::p2());
  CHECK(r.optimal_cost == 2);
  CHECK(r.certificate_value == 2);
  CHECK(odx::transmitted(g, r.policy) == std::vector<odx::VertexId>{{Side::kRobot1, 0}, {Side::kRobot2, 0}});
  CHECK(odx::solve_brute_force(g, odx::Objective::p2()).optimal_cost == 2);
  check_dual(g, odx::effective_weights(g, odx::Objective::p2()), r);

  const auto m = odx::solve_uniform_matching(g);
  CHECK(m.optimal_cost == 2);
  CHECK(m.matching.size() == 2);
  CHECK(m.policy == r.policy);
}

TEST_CASE("single edge picks the cheaper endpoint") {
  const auto g = odx::build_graph({5}, {3}, {{0, 0, 1}});
  const auto r = odx::solve(g, odx::Objective::p2());
  CHECK(r.optimal_cost == 3);
  CHECK(odx::transmitted(g, r.policy) == std::vector<odx::VertexId>{{Side::kRobot2, 0}});
  const auto tie = odx::build_graph({4}, {4}, {{0, 0, 1}});
  CHECK(odx::transmitted(g, odx::solve(tie, odx::Objective::p2()).policy).size() == 1);
  CHECK(odx::solve(tie, odx::Objective::p2()).policy[0]);
}

TEST_CASE("solve equals exhaustive search") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n1 = 1 + rng() % 6, n2 = 1 + rng() % 6;
    const auto raw = oracle::random_raw(rng, n1, n2, 0.15 + 0.7 * (rng() % 100) / 100.0);
    const auto g = oracle::build(raw);
    for (auto variant : {odx::Variant::kP1, odx::Variant::kP2, odx::Variant::kP3}) {
      const auto obj = oracle::random_objective(rng, variant);
      const auto r = odx::solve(g, obj);
      const auto best = oracle::brute_force(raw, obj);
      CHECK(r.optimal_cost == best.cost);
      CHECK(r.certificate_value == r.optimal_cost);
      CHECK(odx::is_admissible(g, r.policy));
      CHECK(odx::objective_cost(g, r.policy, obj) == r.optimal_cost);
      const auto w = odx::effective_weights(g, obj);
      check_dual(g, w, r);
      CHECK(odx::verify_certificate(g, w, r));
      CHECK(odx::solve_brute_force(g, obj).optimal_cost == best.cost);
    }
  }
}

TEST_CASE("ties resolve to the lexicographically smallest cover") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n1 = 1 + rng() % 5, n2 = 1 + rng() % 5;
    auto raw = oracle::random_raw(rng, n1, n2, 0.5);
    // Small positive integers make ties common.
    for (auto& w : raw.w1) w = Rational(1 + rng() % 3);
    for (auto& w : raw.w2) w = Rational(1 + rng() % 3);
    const auto g = oracle::build(raw);
    const auto best = oracle::brute_force(raw, odx::Objective::p2());
    CHECK(mask_of(odx::solve(g, odx::Objective::p2()).policy) == best.mask);
  }
}

TEST_CASE("scaling weights scales the cost and keeps the cover") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    auto raw = oracle::random_raw(rng, 1 + rng() % 7, 1 + rng() % 7, 0.4);
    const auto base = odx::solve(oracle::build(raw), odx::Objective::p2());
    const Rational k(1 + rng() % 50, 1 + rng() % 7);
    for (auto& w : raw.w1) w *= k;
    for (auto& w : raw.w2) w *= k;
    const auto scaled = odx::solve(oracle::build(raw), odx::Objective::p2());
    CHECK(scaled.optimal_cost == k * base.optimal_cost);
    CHECK(scaled.policy == base.policy);
  }
}

TEST_CASE("huge weights take the big-integer path") {
  const Rational big = odx::parse_rational("123456789012345678901234567890");
  const auto g = odx::build_graph({big, Rational(1, 3)}, {big * 2, big / 7}, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}});
  oracle::RawGraph raw{{big, Rational(1, 3)}, {big * 2, big / 7}, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}};
  const auto r = odx::solve(g, odx::Objective::p2());
  CHECK(r.optimal_cost == oracle::brute_force(raw, odx::Objective::p2()).cost);
  CHECK(r.certificate_value == r.optimal_cost);
}

TEST_CASE("zero weights and zero costs") {
  const auto g = odx::build_graph({0, 2}, {0, 0}, {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  const auto r = odx::solve(g, odx::Objective::p2());
  CHECK(r.optimal_cost == 0);
  CHECK(odx::is_admissible(g, r.policy));
  const auto p1 = odx::solve(g, odx::Objective::p1(0, 0));
  CHECK(p1.optimal_cost == 0);
  CHECK(odx::is_admissible(g, p1.policy));
}

TEST_CASE("edgeless graph") {
  const auto g = odx::build_graph({1}, {1}, {});
  const auto r = odx::solve(g, odx::Objective::p2());
  CHECK(r.optimal_cost == 0);
  CHECK(r.policy.size() == 0);
}

TEST_CASE("uniform matching") {
  const auto k35 = oracle::build(oracle::complete(3, 5));
  CHECK(odx::solve_uniform_matching(k35).optimal_cost == 3);
  std::mt19937_64 rng(404);
  const auto reg = oracle::build(oracle::random_regular(rng, 6, 3));
  CHECK(odx::solve_uniform_matching(reg).optimal_cost == 6);
  CHECK(odx::solve(reg, odx::Objective::p2()).optimal_cost == 6);

  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_raw(rng, 1 + rng() % 9, 1 + rng() % 9, 0.3, true);
    const auto g = oracle::build(raw);
    const auto m = odx::solve_uniform_matching(g);
    CHECK(m.optimal_cost == oracle::matching_size(raw));
    CHECK(m.matching.size() == oracle::matching_size(raw));
    CHECK(odx::maximum_matching(g).size() == oracle::matching_size(raw));
    CHECK(m.optimal_cost == odx::solve(g, odx::Objective::p2()).optimal_cost);
    CHECK(odx::is_admissible(g, m.policy));
    // Matched edges are vertex-disjoint.
    std::vector<int> used(g.vertex_count(), 0);
    for (auto e : m.matching) {
      CHECK(used[g.edges()[e].u]++ == 0);
      CHECK(used[g.edges()[e].v]++ == 0);
    }
  }

  const auto uneven = odx::build_graph({1, 2}, {1}, {{0, 0, 1}, {1, 0, 1}});
  CHECK_THROWS_AS(odx::solve_uniform_matching(uneven), odx::Error);
  // Uniform but not unit weights scale the matching size.
  const auto threes = odx::build_graph({3, 3}, {3}, {{0, 0, 1}, {1, 0, 1}});
  CHECK(odx::solve_uniform_matching(threes).optimal_cost == 3);
}

TEST_CASE("closed form for the workload objective") {
  const auto g = oracle::build(oracle::fig2());
  const auto r = odx::p1_closed_form(g, 2, 1);
  CHECK(r.optimal_cost == 7);
  CHECK(r.policy == odx::monolog(g, Side::kRobot1));
  CHECK(odx::p1_closed_form(g, 1, 1).policy == odx::monolog(g, Side::kRobot1));
  CHECK(odx::p1_closed_form(g, 1, 3).policy == odx::monolog(g, Side::kRobot2));
  CHECK(odx::p1_closed_form(g, 5, 0).optimal_cost == 0);

  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_raw(rng, 1 + rng() % 7, 1 + rng() % 7, 0.4);
    const auto h = oracle::build(raw);
    const Rational a1 = oracle::random_rational(rng, 5, 3), a2 = oracle::random_rational(rng, 5, 3);
    Rational total = 0;
    for (const auto& e : raw.edges) total += e.cost;
    const auto cf = odx::p1_closed_form(h, a1, a2);
    CHECK(cf.optimal_cost == std::min(a1, a2) * total);
    CHECK(cf.optimal_cost == odx::solve(h, odx::Objective::p1(a1, a2)).optimal_cost);
    CHECK(odx::objective_cost(h, cf.policy, odx::Objective::p1(a1, a2)) == cf.optimal_cost);
  }
}

TEST_CASE("generalized Hall condition on the double star") {
  const auto g = oracle::build(oracle::fig2());
  const auto c = odx::check_ghc(g, odx::Objective::p2(), Side::kRobot1);
  CHECK_FALSE(c.holds);
  CHECK(c.witness ==
        std::vector<odx::VertexId>{{Side::kRobot1, 1}, {Side::kRobot1, 2}, {Side::kRobot1, 3}});
  CHECK(c.neighborhood == std::vector<odx::VertexId>{{Side::kRobot2, 0}});
  CHECK(c.witness_weight == 3);
  CHECK(c.neighborhood_weight == 1);
  CHECK(c.improving_cost == 2);
  CHECK(c.monolog_cost == 4);
  CHECK(odx::transmitted(g, c.improving_policy) ==
        std::vector<odx::VertexId>{{Side::kRobot1, 0}, {Side::kRobot2, 0}});

  CHECK(odx::check_ghc(odx::build_graph({1}, {1}, {{0, 0, 1}}), odx::Objective::p2(), Side::kRobot1).holds);
  CHECK(odx::check_ghc(oracle::build(oracle::complete(3, 3)), odx::Objective::p2(), Side::kRobot1).holds);
}

TEST_CASE("generalized Hall condition against subset enumeration") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 150; ++trial) {
    const auto raw = oracle::random_raw(rng, 1 + rng() % 6, 1 + rng() % 6, 0.4);
    const auto g = oracle::build(raw);
    for (auto variant : {odx::Variant::kP1, odx::Variant::kP2, odx::Variant::kP3}) {
      const auto obj = oracle::random_objective(rng, variant);
      for (int side : {1, 2}) {
        const auto c = odx::check_ghc(g, obj, odx::side_from_robot(side));
        const bool violated = oracle::ghc_violation(raw, obj, side).has_value();
        CHECK(c.holds == !violated);
        const Rational mono = odx::objective_cost(g, odx::monolog(g, odx::side_from_robot(side)), obj);
        CHECK(c.holds == (mono == odx::solve(g, obj).optimal_cost));
        if (!c.holds) {
          CHECK(c.witness_weight > c.neighborhood_weight);
          CHECK(odx::is_admissible(g, c.improving_policy));
          CHECK(odx::objective_cost(g, c.improving_policy, obj) == c.improving_cost);
          CHECK(c.improving_cost < mono);
        }
      }
    }
  }
}

TEST_CASE("Hall saturation") {
  CHECK_FALSE(odx::check_hall_uniform(oracle::build(oracle::fig2()), Side::kRobot1));
  oracle::RawGraph cycle;
  cycle.w1.assign(4, 1);
  cycle.w2.assign(4, 1);
  for (std::uint64_t i = 0; i < 4; ++i) {
    cycle.edges.push_back({i, i, 1});
    cycle.edges.push_back({i, (i + 1) % 4, 1});
  }
  CHECK(odx::check_hall_uniform(oracle::build(cycle), Side::kRobot1));
  CHECK(odx::check_hall_uniform(oracle::build(oracle::complete(2, 5)), Side::kRobot1));
  CHECK_FALSE(odx::check_hall_uniform(oracle::build(oracle::complete(2, 5)), Side::kRobot2));
  CHECK_THROWS_AS(odx::check_hall_uniform(odx::build_graph({1, 2}, {1}, {{0, 0, 1}, {1, 0, 1}}), Side::kRobot1),
                  odx::Error);

  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::build(oracle::random_raw(rng, 1 + rng() % 7, 1 + rng() % 7, 0.3, true));
    for (auto side : {Side::kRobot1, Side::kRobot2}) {
      CHECK(odx::check_hall_uniform(g, side) == odx::check_ghc(g, odx::Objective::p2(), side).holds);
    }
  }
}
