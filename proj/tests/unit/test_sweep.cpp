#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "odx/candidates.hpp"
#include "odx/error.hpp"
#include "odx/solver.hpp"
#include "odx/sweep.hpp"

using odx::Rational;

namespace {

odx::Trajectory load_fixture(const std::string& name) {
  const std::string base = std::string(ODX_DATA_DIR) + "/" + name;
  return odx::make_trajectory(odx::load_kitti_poses(base + ".txt"), odx::load_feature_counts(base + ".features"));
}

}  // namespace

TEST_CASE("sweep spec") {
  odx::SweepSpec spec{odx::SweepParameter::kDMax, 10, 50, 10};
  CHECK(spec.points() == std::vector<Rational>{10, 20, 30, 40, 50});
  spec.from = 60;
  CHECK_THROWS_AS(spec.validate(), odx::Error);
  spec = {odx::SweepParameter::kEta, Rational(1, 10), Rational(3, 10), 0};
  CHECK_THROWS_AS(spec.validate(), odx::Error);
  CHECK(odx::parse_sweep_parameter("d_max") == odx::SweepParameter::kDMax);
  CHECK_THROWS_AS(odx::parse_sweep_parameter("beta"), odx::Error);
}

TEST_CASE("figure-eight d_max sweep") {
  const auto t1 = load_fixture("figure_eight_1");
  const auto t2 = load_fixture("figure_eight_2");
  const odx::SweepSpec spec{odx::SweepParameter::kDMax, 10, 50, 10};
  const auto report = odx::sweep_geometric(t1, t2, odx::GeometryParams{}, spec, odx::Objective::p2());
  REQUIRE(report.rows.size() == 5);
  CHECK(report.nested);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    CHECK(r.costs.optimal <= std::min(r.costs.monolog1, r.costs.monolog2));
    CHECK(r.costs.monolog1 + r.costs.monolog2 == r.costs.bidirectional);
    if (i > 0) CHECK(report.rows[i - 1].costs.optimal <= r.costs.optimal);
    // A sweep row agrees with solving the graph built at that value.
    odx::GeometryParams p;
    p.d_max = odx::to_double(r.value);
    const auto g = odx::build_geometric(t1, t2, p);
    CHECK(r.edges == g.edge_count());
    CHECK(r.costs.optimal == odx::solve(g, odx::Objective::p2()).optimal_cost);
  }
  CHECK(odx::sweep_csv(report) ==
        odx::sweep_csv(odx::sweep_geometric(t1, t2, odx::GeometryParams{}, spec, odx::Objective::p2())));
  CHECK(odx::sweep_csv(report).rfind("param_value,optimal,monolog1,monolog2,bidirectional,vertices,edges\n", 0) == 0);
  CHECK(odx::sweep_gnuplot(report, "dmax").rfind("$dmax << EOD\n", 0) == 0);
}

TEST_CASE("alpha sweep on a random score matrix") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<odx::Score> scores;
  for (std::uint64_t u = 0; u < 30; ++u) {
    for (std::uint64_t v = 0; v < 30; ++v) scores.push_back({u, v, unit(rng)});
  }
  std::vector<Rational> w1, w2;
  for (int i = 0; i < 30; ++i) {
    w1.push_back(Rational(1 + rng() % 100));
    w2.push_back(Rational(1 + rng() % 100));
  }
  const odx::SweepSpec spec{odx::SweepParameter::kAlpha, 0, Rational(9, 10), Rational(1, 10)};
  const auto report = odx::sweep_appearance(scores, w1, w2, odx::AppearanceParams{}, spec, odx::Objective::p2());
  CHECK(report.nested);
  for (std::size_t i = 1; i < report.rows.size(); ++i) CHECK(report.rows[i].edges <= report.rows[i - 1].edges);
}

TEST_CASE("omega sweep is monotone") {
  std::mt19937_64 rng(13);
  const auto g = oracle::build(oracle::random_raw(rng, 6, 6, 0.4));
  const odx::SweepSpec spec{odx::SweepParameter::kOmega, 0, 2, Rational(1, 4)};
  const auto report = odx::sweep_omega(g, spec, odx::Objective::p3(1, 2, 0));
  REQUIRE(report.rows.size() == 9);
  CHECK(report.rows[0].costs.optimal == odx::solve(g, odx::Objective::p2()).optimal_cost);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i - 1].costs.optimal <= report.rows[i].costs.optimal);
  }
}

TEST_CASE("edgeless sweep points cost nothing") {
  const auto t1 = load_fixture("two_loop_1");
  const auto t2 = load_fixture("two_loop_2");
  const odx::SweepSpec spec{odx::SweepParameter::kEta, Rational(9, 10), 1, Rational(1, 10)};
  const auto report = odx::sweep_geometric(t1, t2, odx::GeometryParams{}, spec, odx::Objective::p2());
  for (const auto& r : report.rows) {
    if (r.edges == 0) CHECK(r.costs.bidirectional == 0);
  }
}
