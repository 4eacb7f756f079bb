#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "odx/error.hpp"
#include "odx/graph.hpp"
#include "odx/rational.hpp"

using odx::Rational;

namespace {

odx::ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const odx::Error& e) {
    return e.kind();
  }
  FAIL("expected an odx::Error");
  return odx::ErrorKind::kInvariantViolation;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(odx::parse_rational("0.1") == Rational(1, 10));
  CHECK(odx::parse_rational("0.25") == Rational(1, 4));
  CHECK(odx::parse_rational("0.9") == Rational(9, 10));
  CHECK(odx::parse_rational("007") == Rational(7));
  CHECK(odx::parse_rational("08/09") == Rational(8, 9));
  CHECK(odx::parse_rational("-1.5e2") == Rational(-150));
  CHECK(odx::parse_rational("2.5E-1") == Rational(1, 4));
  CHECK(odx::parse_rational(" 3/6 ") == Rational(1, 2));
  CHECK(odx::parse_rational("0") == Rational(0));
  CHECK(odx::parse_rational(".5") == Rational(1, 2));
  for (const char* bad : {"", "abc", "1/0", "1..2", "1e", "--1", "1/2/3", "0x10"}) {
    CHECK(kind_of([&] { odx::parse_rational(bad); }) == odx::ErrorKind::kParse);
  }
}

TEST_CASE("rational formatting round-trips") {
  CHECK(odx::to_string(Rational(1, 4)) == "0.25");
  CHECK(odx::to_string(Rational(-3, 8)) == "-0.375");
  CHECK(odx::to_string(Rational(1, 3)) == "1/3");
  CHECK(odx::to_string(Rational(12)) == "12");
  CHECK(odx::to_string(Rational(1, 1000)) == "0.001");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Rational r(static_cast<long>(rng() % 100000) - 50000, static_cast<long>(rng() % 999) + 1);
    CHECK(odx::parse_rational(odx::to_string(r)) == r);
  }
}

TEST_CASE("build_graph reproduces the double star") {
  const auto g = oracle::build(oracle::fig2());
  CHECK(g.vertex_count() == 8);
  CHECK(g.edge_count() == 7);
  CHECK(g.size(odx::Side::kRobot1) == 4);
  CHECK(g.degree(g.dense_index(odx::Side::kRobot1, 0)) == 4);
  CHECK(g.degree(g.dense_index(odx::Side::kRobot2, 0)) == 4);
  CHECK(g.degree(g.dense_index(odx::Side::kRobot1, 3)) == 1);
  CHECK(g.pruned().empty());
}

TEST_CASE("smallest graph and pruning") {
  const auto single = odx::build_graph({5}, {3}, {{0, 0, 1}});
  CHECK(single.vertex_count() == 2);
  CHECK(single.edge_count() == 1);

  const auto pruned = odx::build_graph({1, 1}, {1}, {{0, 0, 1}});
  CHECK(pruned.vertex_count() == 3 - 1);
  REQUIRE(pruned.pruned().size() == 1);
  CHECK(pruned.pruned()[0] == odx::VertexId{odx::Side::kRobot1, 1});
  CHECK_FALSE(pruned.find({odx::Side::kRobot1, 1}).has_value());
  CHECK(kind_of([&] { pruned.require({odx::Side::kRobot1, 1}); }) == odx::ErrorKind::kUnknownVertex);
}

TEST_CASE("graph validation errors") {
  CHECK(kind_of([] { odx::build_graph({1}, {1}, {{0, 0, 1}, {0, 0, 2}}); }) == odx::ErrorKind::kDuplicateEdge);
  CHECK(kind_of([] { odx::build_graph({-1}, {1}, {{0, 0, 1}}); }) == odx::ErrorKind::kNegativeWeight);
  CHECK(kind_of([] { odx::build_graph({1}, {1}, {{0, 0, -1}}); }) == odx::ErrorKind::kNegativeWeight);
  CHECK(kind_of([] { odx::build_graph({1}, {1}, {{0, 1, 1}}); }) == odx::ErrorKind::kIndexOutOfRange);
  CHECK(kind_of([] { odx::build_graph({1}, {1}, {{2, 0, 1}}); }) == odx::ErrorKind::kIndexOutOfRange);
}

TEST_CASE("zero-cost edges are kept") {
  const auto g = odx::build_graph({1}, {1}, {{0, 0, 0}});
  CHECK(g.edge_count() == 1);
}

TEST_CASE("effective weights") {
  const auto g = oracle::build(oracle::fig2());
  const odx::VertexId a1{odx::Side::kRobot1, 0};
  CHECK(odx::effective_weight(g, a1, odx::Objective::p1(2, 1)) == 4);
  CHECK(odx::effective_weight(g, odx::VertexId{odx::Side::kRobot2, 0}, odx::Objective::p1(2, 1)) == 8);
  const auto h = odx::build_graph({37}, {1}, {{0, 0, 1}});
  CHECK(odx::effective_weight(h, odx::VertexId{odx::Side::kRobot1, 0}, odx::Objective::p2()) == 37);
  CHECK(kind_of([&] { odx::effective_weight(g, odx::VertexId{odx::Side::kRobot2, 9}, odx::Objective::p2()); }) ==
        odx::ErrorKind::kUnknownVertex);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = oracle::random_raw(rng, 1 + rng() % 6, 1 + rng() % 6, 0.4);
    const auto graph = oracle::build(raw);
    for (auto variant : {odx::Variant::kP1, odx::Variant::kP2, odx::Variant::kP3}) {
      const auto obj = oracle::random_objective(rng, variant);
      const auto [wa, wb] = oracle::weights(raw, obj);
      const auto w = odx::effective_weights(graph, obj);
      for (std::size_t u = 0; u < wa.size(); ++u) CHECK(w[u] == wa[u]);
      for (std::size_t v = 0; v < wb.size(); ++v) CHECK(w[wa.size() + v] == wb[v]);
    }
    // p3 with omega = 0 is p2, and p3 weights grow with omega.
    const auto p2 = odx::effective_weights(graph, odx::Objective::p2());
    CHECK(odx::effective_weights(graph, odx::Objective::p3(3, 2, 0)) == p2);
    const auto lo = odx::effective_weights(graph, odx::Objective::p3(1, 1, Rational(1, 3)));
    const auto hi = odx::effective_weights(graph, odx::Objective::p3(1, 1, Rational(1, 2)));
    for (std::size_t i = 0; i < lo.size(); ++i) CHECK(lo[i] <= hi[i]);
  }
}

TEST_CASE("inertia replaces scan size") {
  const auto g = odx::parse_graph_json(R"({"v1": [{"id": 0, "scan_size": 10, "inertia": 2}],
                                           "v2": [{"id": 0, "scan_size": 3}],
                                           "edges": [{"u": 0, "v": 0, "cost": 1}]})");
  CHECK(odx::effective_weight(g, std::size_t{0}, odx::Objective::p2()) == 2);
  CHECK(odx::effective_weight(g, std::size_t{0}, odx::Objective::p3(1, 1, 1)) == 3);
  CHECK(odx::effective_weight(g, std::size_t{0}, odx::Objective::p1(1, 1)) == 1);
}

TEST_CASE("degree sum and incidence columns") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracle::build(oracle::random_raw(rng, 1 + rng() % 9, 1 + rng() % 9, 0.3));
    std::size_t total = 0;
    for (std::size_t d = 0; d < g.vertex_count(); ++d) total += g.degree(d);
    CHECK(total == 2 * g.edge_count());
    const auto view = g.incidence();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto [a, b] = view.column(e);
      CHECK(g.side_of(a) == odx::Side::kRobot1);
      CHECK(g.side_of(b) == odx::Side::kRobot2);
      std::size_t hits = 0;
      for (std::size_t d = 0; d < g.vertex_count(); ++d) {
        for (std::size_t inc : view.incident(d)) hits += inc == e;
      }
      CHECK(hits == 2);
    }
  }
}

TEST_CASE("json round trip is identity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::build(oracle::random_raw(rng, 1 + rng() % 7, 1 + rng() % 7, 0.5));
    const std::string text = odx::graph_to_json(g);
    const auto back = odx::parse_graph_json(text);
    CHECK(back == g);
    CHECK(odx::graph_to_json(back) == text);
  }
}

TEST_CASE("json decimals convert exactly") {
  const auto g = odx::parse_graph_json(R"({"v1": [{"id": 4, "scan_size": 0.1}],
                                           "v2": [{"id": 9, "scan_size": 1e-2}],
                                           "edges": [{"u": 4, "v": 9, "cost": 0.3}]})");
  CHECK(g.vertex(0).scan_size == Rational(1, 10));
  CHECK(g.vertex(1).scan_size == Rational(1, 100));
  CHECK(g.edges()[0].cost == Rational(3, 10));
  CHECK(g.vertex(0).id.index == 4);
}

TEST_CASE("json errors") {
  CHECK(kind_of([] { odx::parse_graph_json("{"); }) == odx::ErrorKind::kParse);
  CHECK(kind_of([] { odx::parse_graph_json(R"({"v1": []})"); }) == odx::ErrorKind::kParse);
  CHECK(kind_of([] {
          odx::parse_graph_json(R"({"v1": [{"id": 0, "scan_size": "x"}], "v2": [], "edges": []})");
        }) == odx::ErrorKind::kParse);
  CHECK(kind_of([] {
          odx::parse_graph_json(
              R"({"v1": [{"id": 0, "scan_size": 1}], "v2": [{"id": 0, "scan_size": 1}], "edges": [{"u": 0, "v": 3}]})");
        }) == odx::ErrorKind::kIndexOutOfRange);
  CHECK(kind_of([] {
          odx::parse_graph_json(
              R"({"v1": [{"id": 0, "scan_size": -1}], "v2": [{"id": 0, "scan_size": 1}], "edges": [{"u": 0, "v": 0}]})");
        }) == odx::ErrorKind::kNegativeWeight);
  CHECK(kind_of([] { odx::load_graph("/nonexistent/graph.json"); }) == odx::ErrorKind::kIo);
}

TEST_CASE("error classification") {
  CHECK(odx::is_validation_error(odx::ErrorKind::kDuplicateEdge));
  CHECK_FALSE(odx::is_validation_error(odx::ErrorKind::kParse));
  CHECK(std::string(odx::to_string(odx::ErrorKind::kDuplicateEdge)) == "DuplicateEdge");
}
