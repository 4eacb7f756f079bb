// Exercises the C interface through the shared library only.
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "odx/odx.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  odx_string_free(s);
  return out;
}

std::string data(const char* name) { return std::string(ODX_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("graph and solve through handles") {
  odx_graph* g = nullptr;
  REQUIRE(odx_graph_load(data("fig2.json").c_str(), &g) == ODX_OK);
  CHECK(odx_graph_vertex_count(g, 1) == 4);
  CHECK(odx_graph_vertex_count(g, 2) == 4);
  CHECK(odx_graph_edge_count(g) == 7);

  odx_objective* p2 = nullptr;
  REQUIRE(odx_objective_create(ODX_P2, nullptr, nullptr, nullptr, &p2) == ODX_OK);
  odx_solve_result* r = nullptr;
  REQUIRE(odx_solve(g, p2, &r) == ODX_OK);
  CHECK(std::string(odx_solve_result_cost(r)) == "2");
  CHECK(std::string(odx_solve_result_certificate(r)) == "2");
  CHECK(std::string(odx_solve_result_method(r)) == "flow_cut");
  int ok = 0;
  CHECK(odx_policy_is_admissible(g, odx_solve_result_policy(r), &ok) == ODX_OK);
  CHECK(ok == 1);

  char* text = nullptr;
  REQUIRE(odx_policy_workloads(g, odx_solve_result_policy(r), p2, &text) == ODX_OK);
  const std::string w = take(text);
  CHECK(w.find("\"ell1\": \"4\"") != std::string::npos);
  CHECK(w.find("\"l12\": [[0, 0]]") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "odx_capi_policy.json";
  REQUIRE(odx_policy_save(g, odx_solve_result_policy(r), path.c_str()) == ODX_OK);
  odx_policy* loaded = nullptr;
  REQUIRE(odx_policy_load(g, path.c_str(), &loaded) == ODX_OK);
  REQUIRE(odx_policy_comm_cost(g, loaded, &text) == ODX_OK);
  CHECK(take(text) == "2");
  odx_policy_free(loaded);
  std::filesystem::remove(path);

  odx_ghc_certificate* c = nullptr;
  REQUIRE(odx_check_ghc(g, p2, 1, &c) == ODX_OK);
  CHECK(odx_ghc_holds(c) == 0);
  REQUIRE(odx_ghc_to_json(g, c, &text) == ODX_OK);
  CHECK(take(text).find("\"improving_cost\": \"2\"") != std::string::npos);
  odx_ghc_free(c);

  int hall = 1;
  CHECK(odx_check_hall_uniform(g, p2, 1, &hall) == ODX_OK);
  CHECK(hall == 0);

  odx_solve_result_free(r);
  odx_objective_free(p2);
  odx_graph_free(g);
}

TEST_CASE("status codes and messages") {
  odx_graph* g = nullptr;
  CHECK(odx_graph_load(data("malformed.json").c_str(), &g) == ODX_ERR_PARSE);
  CHECK(std::strlen(odx_last_error()) > 0);
  CHECK(odx_status_is_parse_error(ODX_ERR_PARSE));
  CHECK(odx_graph_load(data("duplicate_edge.json").c_str(), &g) == ODX_ERR_DUPLICATE_EDGE);
  CHECK(odx_status_is_validation_error(ODX_ERR_DUPLICATE_EDGE));
  CHECK(odx_graph_load("/nonexistent.json", &g) == ODX_ERR_IO);
  CHECK(odx_graph_load(nullptr, &g) == ODX_ERR_INVALID_ARGUMENT);
  odx_objective* o = nullptr;
  CHECK(odx_objective_create(ODX_P3, "-1", nullptr, nullptr, &o) == ODX_ERR_NEGATIVE_WEIGHT);
  CHECK(odx_objective_create(ODX_P3, "abc", nullptr, nullptr, &o) == ODX_ERR_PARSE);
  CHECK(std::string(odx_status_name(ODX_ERR_INVARIANT)) == "InvariantViolation");

  const char* w1[] = {"1"};
  const char* w2[] = {"1"};
  const uint64_t u[] = {0, 0}, v[] = {0, 0};
  CHECK(odx_graph_build(w1, 1, w2, 1, u, v, nullptr, 2, &g) == ODX_ERR_DUPLICATE_EDGE);
}

TEST_CASE("built graphs and closed forms") {
  const char* w1[] = {"5"};
  const char* w2[] = {"3"};
  const uint64_t u[] = {0}, v[] = {0};
  odx_graph* g = nullptr;
  REQUIRE(odx_graph_build(w1, 1, w2, 1, u, v, nullptr, 1, &g) == ODX_OK);
  odx_objective* p3 = nullptr;
  REQUIRE(odx_objective_create(ODX_P3, "1", "1", "0", &p3) == ODX_OK);
  odx_solve_result* r = nullptr;
  REQUIRE(odx_solve(g, p3, &r) == ODX_OK);
  CHECK(std::string(odx_solve_result_cost(r)) == "3");
  odx_solve_result_free(r);
  REQUIRE(odx_p1_closed_form(g, "2", "1/3", &r) == ODX_OK);
  CHECK(std::string(odx_solve_result_cost(r)) == "1/3");
  odx_solve_result_free(r);
  REQUIRE(odx_solve_brute_force(g, p3, &r) == ODX_OK);
  CHECK(std::string(odx_solve_result_method(r)) == "brute_force");
  odx_solve_result_free(r);
  char* text = nullptr;
  REQUIRE(odx_graph_effective_weight(g, 1, 0, p3, &text) == ODX_OK);
  CHECK(take(text) == "5");
  CHECK(odx_graph_effective_weight(g, 1, 7, p3, &text) == ODX_ERR_UNKNOWN_VERTEX);
  odx_objective_free(p3);
  odx_graph_free(g);
}

TEST_CASE("candidates, rendezvous and sweeps") {
  odx_trajectory *t1 = nullptr, *t2 = nullptr;
  REQUIRE(odx_trajectory_load_kitti(data("two_loop_1.txt").c_str(), data("two_loop_1.features").c_str(), 0, &t1) ==
          ODX_OK);
  REQUIRE(odx_trajectory_load_kitti(data("two_loop_2.txt").c_str(), nullptr, 500, &t2) == ODX_OK);
  CHECK(odx_trajectory_size(t1) == 120);
  odx_geometry_params params;
  odx_geometry_params_default(&params);
  CHECK(params.d_max == 30.0);
  odx_graph* g = nullptr;
  REQUIRE(odx_graph_build_geometric(t1, t2, &params, &g) == ODX_OK);
  CHECK(odx_graph_edge_count(g) > 0);

  odx_objective* p2 = nullptr;
  REQUIRE(odx_objective_create(ODX_P2, nullptr, nullptr, nullptr, &p2) == ODX_OK);
  odx_rendezvous_config* cfg = nullptr;
  REQUIRE(odx_rendezvous_config_create(p2, &cfg) == ODX_OK);
  CHECK(odx_rendezvous_config_set_metadata_bytes(cfg, "-3") == ODX_ERR_NEGATIVE_WEIGHT);
  CHECK(odx_rendezvous_config_set_ground_truth(cfg, g, "100000 0\n") != ODX_OK);
  odx_trace* trace = nullptr;
  REQUIRE(odx_rendezvous_run(g, cfg, nullptr, &trace) == ODX_OK);
  char* text = nullptr;
  REQUIRE(odx_trace_summary_json(g, trace, &text) == ODX_OK);
  CHECK(take(text).find("\"scan_bytes\"") != std::string::npos);
  REQUIRE(odx_compare_strategies_csv(g, cfg, &text) == ODX_OK);
  CHECK(take(text).rfind("strategy,", 0) == 0);
  odx_trace_free(trace);

  char *csv = nullptr, *note = nullptr;
  int nested = 0;
  REQUIRE(odx_sweep_geometric(t1, t2, &params, p2, ODX_SWEEP_DMAX, "10", "30", "10", 0, &csv, &note, &nested) ==
          ODX_OK);
  CHECK(nested == 1);
  CHECK(take(csv).rfind("param_value,", 0) == 0);
  take(note);
  CHECK(odx_sweep_geometric(t1, t2, &params, p2, ODX_SWEEP_DMAX, "30", "10", "10", 0, &csv, &note, &nested) ==
        ODX_ERR_INVALID_ARGUMENT);

  odx_trajectory* half = nullptr;
  REQUIRE(odx_trajectory_slice(t1, 10, 20, &half) == ODX_OK);
  CHECK(odx_trajectory_size(half) == 10);
  odx_trajectory_free(half);

  odx_rendezvous_config_free(cfg);
  odx_objective_free(p2);
  odx_graph_free(g);
  odx_trajectory_free(t1);
  odx_trajectory_free(t2);
}

TEST_CASE("appearance through handles") {
  odx_scores* s = nullptr;
  REQUIRE(odx_scores_load(data("scores.txt").c_str(), &s) == ODX_OK);
  uint64_t *f1 = nullptr, *f2 = nullptr;
  size_t n1 = 0, n2 = 0;
  REQUIRE(odx_feature_counts_load(data("scores_1.features").c_str(), &f1, &n1) == ODX_OK);
  REQUIRE(odx_feature_counts_load(data("scores_2.features").c_str(), &f2, &n2) == ODX_OK);
  odx_appearance_params p;
  odx_appearance_params_default(&p);
  CHECK(p.top_k == 2);
  odx_graph* g = nullptr;
  REQUIRE(odx_graph_build_appearance(s, f1, n1, f2, n2, 32, &p, &g) == ODX_OK);
  CHECK(odx_graph_edge_count(g) <= 2 * n1);
  odx_graph_free(g);
  char *csv = nullptr, *note = nullptr;
  int nested = 0;
  REQUIRE(odx_sweep_appearance(s, f1, n1, f2, n2, 32, &p, nullptr, "0", "0.9", "0.3", 1, &csv, &note, &nested) ==
          ODX_OK);
  CHECK(nested == 1);
  CHECK(take(csv).find("$alpha << EOD") != std::string::npos);
  take(note);
  odx_feature_counts_free(f1);
  odx_feature_counts_free(f2);
  odx_scores_free(s);
}
