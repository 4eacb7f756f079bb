// odx: command-line front end over the odx C library.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odx/odx.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInvariant = 4;

struct Failure {
  odx_status status;
  std::string message;
};

int exit_code(odx_status status) {
  if (status == ODX_OK) return kExitOk;
  if (odx_status_is_parse_error(status)) return kExitParse;
  if (odx_status_is_validation_error(status) || status == ODX_ERR_INVALID_ARGUMENT) return kExitValidation;
  return kExitInvariant;
}

void check(odx_status status) {
  if (status != ODX_OK) throw Failure{status, odx_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Graph = std::unique_ptr<odx_graph, Deleter<odx_graph, odx_graph_free>>;
using Objective = std::unique_ptr<odx_objective, Deleter<odx_objective, odx_objective_free>>;
using Policy = std::unique_ptr<odx_policy, Deleter<odx_policy, odx_policy_free>>;
using Result = std::unique_ptr<odx_solve_result, Deleter<odx_solve_result, odx_solve_result_free>>;
using Ghc = std::unique_ptr<odx_ghc_certificate, Deleter<odx_ghc_certificate, odx_ghc_free>>;
using Traj = std::unique_ptr<odx_trajectory, Deleter<odx_trajectory, odx_trajectory_free>>;
using Scores = std::unique_ptr<odx_scores, Deleter<odx_scores, odx_scores_free>>;
using Config = std::unique_ptr<odx_rendezvous_config, Deleter<odx_rendezvous_config, odx_rendezvous_config_free>>;
using Trace = std::unique_ptr<odx_trace, Deleter<odx_trace, odx_trace_free>>;

// Takes ownership of a library string.
std::string take(char* text) {
  std::string out = text == nullptr ? std::string() : std::string(text);
  odx_string_free(text);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{ODX_ERR_IO, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{ODX_ERR_IO, "cannot write " + path};
}

struct ObjectiveFlags {
  std::string variant = "p2";
  std::string alpha1 = "1";
  std::string alpha2 = "1";
  std::string omega = "0";

  void attach(CLI::App* cmd) {
    cmd->add_option("--objective", variant, "p1, p2 or p3")->check(CLI::IsMember({"p1", "p2", "p3"}));
    cmd->add_option("--alpha1", alpha1, "robot 1 workload price");
    cmd->add_option("--alpha2", alpha2, "robot 2 workload price");
    cmd->add_option("--omega", omega, "workload weight in p3");
  }

  Objective make() const {
    const odx_variant v = variant == "p1" ? ODX_P1 : variant == "p3" ? ODX_P3 : ODX_P2;
    odx_objective* out = nullptr;
    check(odx_objective_create(v, alpha1.c_str(), alpha2.c_str(), omega.c_str(), &out));
    return Objective(out);
  }
};

// Inputs shared by geometric graph building and the d_max / eta sweeps.
struct GeometricFlags {
  std::string poses, poses1, poses2, features, features1, features2;
  std::optional<std::size_t> split;
  std::uint64_t default_features = 1000;
  odx_geometry_params params{};

  void attach(CLI::App* cmd) {
    odx_geometry_params_default(&params);
    cmd->add_option("--poses1", poses1, "robot 1 KITTI pose file");
    cmd->add_option("--poses2", poses2, "robot 2 KITTI pose file");
    cmd->add_option("--poses", poses, "single KITTI pose file split between the robots");
    cmd->add_option("--split", split, "first pose of robot 2 when --poses is used");
    cmd->add_option("--features1", features1, "robot 1 feature counts");
    cmd->add_option("--features2", features2, "robot 2 feature counts");
    cmd->add_option("--features", features, "feature counts for --poses");
    cmd->add_option("--default-features", default_features, "feature count when no file is given");
    cmd->add_option("--dmax", params.d_max, "candidate distance bound (m)");
    cmd->add_option("--eta", params.eta, "minimum field-of-view overlap");
    cmd->add_option("--rate", params.rate_divisor, "keep every k-th pose");
    cmd->add_option("--fov-half-angle", params.fov_half_angle, "sensor half angle (rad)");
    cmd->add_option("--fov-range", params.fov_range, "sensor range (m)");
    cmd->add_option("--descriptor-bytes", params.descriptor_bytes, "bytes per feature");
  }

  std::pair<Traj, Traj> load() const {
    auto load_one = [&](const std::string& p, const std::string& f) {
      odx_trajectory* t = nullptr;
      check(odx_trajectory_load_kitti(p.c_str(), f.empty() ? nullptr : f.c_str(), default_features, &t));
      return Traj(t);
    };
    if (!poses.empty()) {
      if (!split) throw Failure{ODX_ERR_INVALID_ARGUMENT, "--poses requires --split"};
      Traj all = load_one(poses, features);
      odx_trajectory *a = nullptr, *b = nullptr;
      check(odx_trajectory_slice(all.get(), 0, *split, &a));
      Traj first(a);
      check(odx_trajectory_slice(all.get(), *split, odx_trajectory_size(all.get()), &b));
      return {std::move(first), Traj(b)};
    }
    if (poses1.empty() || poses2.empty()) {
      throw Failure{ODX_ERR_INVALID_ARGUMENT, "give --poses1 and --poses2, or --poses with --split"};
    }
    return {load_one(poses1, features1), load_one(poses2, features2)};
  }
};

struct AppearanceFlags {
  std::string scores, features1, features2;
  std::uint64_t descriptor_bytes = 32;
  odx_appearance_params params{};

  struct Loaded {
    Scores scores;
    std::vector<std::uint64_t> f1, f2;
  };

  Loaded load() const {
    if (scores.empty() || features1.empty() || features2.empty()) {
      throw Failure{ODX_ERR_INVALID_ARGUMENT, "appearance mode needs --scores, --features1 and --features2"};
    }
    Loaded out;
    odx_scores* s = nullptr;
    check(odx_scores_load(scores.c_str(), &s));
    out.scores.reset(s);
    auto counts = [](const std::string& path) {
      std::uint64_t* data = nullptr;
      std::size_t n = 0;
      check(odx_feature_counts_load(path.c_str(), &data, &n));
      std::vector<std::uint64_t> v(data, data + n);
      odx_feature_counts_free(data);
      return v;
    };
    out.f1 = counts(features1);
    out.f2 = counts(features2);
    return out;
  }
};

Graph load_graph(const std::string& path) {
  odx_graph* g = nullptr;
  check(odx_graph_load(path.c_str(), &g));
  return Graph(g);
}

std::string monolog_cost(const odx_graph* g, int side, const odx_objective* obj) {
  if (odx_graph_edge_count(g) == 0) return "0";
  odx_policy* p = nullptr;
  check(odx_policy_monolog(g, side, &p));
  Policy policy(p);
  char* text = nullptr;
  check(odx_policy_objective_cost(g, policy.get(), obj, &text));
  return take(text);
}

// ---- subcommands ------------------------------------------------------------

struct BuildGraphCmd {
  std::string mode = "geometric";
  std::string out;
  GeometricFlags geo;
  AppearanceFlags app;

  void run() {
    odx_graph* g = nullptr;
    if (mode == "geometric") {
      auto [t1, t2] = geo.load();
      check(odx_graph_build_geometric(t1.get(), t2.get(), &geo.params, &g));
    } else {
      auto in = app.load();
      check(odx_graph_build_appearance(in.scores.get(), in.f1.data(), in.f1.size(), in.f2.data(), in.f2.size(),
                                       app.descriptor_bytes, &app.params, &g));
    }
    Graph graph(g);
    char* json = nullptr;
    check(odx_graph_to_json(graph.get(), &json));
    write_text(out, take(json));
    std::cerr << "vertices " << odx_graph_vertex_count(graph.get(), 1) << " + "
              << odx_graph_vertex_count(graph.get(), 2) << ", edges " << odx_graph_edge_count(graph.get())
              << ", pruned " << odx_graph_pruned_count(graph.get()) << "\n";
  }
};

struct SolveCmd {
  std::string graph;
  std::string policy_out;
  std::string method = "flow";
  ObjectiveFlags objective;

  void run() {
    Graph g = load_graph(graph);
    Objective obj = objective.make();
    odx_solve_result* r = nullptr;
    const auto start = std::chrono::steady_clock::now();
    if (method == "flow") {
      check(odx_solve(g.get(), obj.get(), &r));
    } else if (method == "matching") {
      check(odx_solve_uniform_matching(g.get(), obj.get(), &r));
    } else if (method == "brute-force") {
      check(odx_solve_brute_force(g.get(), obj.get(), &r));
    } else {
      if (objective.variant != "p1") throw Failure{ODX_ERR_INVALID_ARGUMENT, "closed form applies to p1 only"};
      check(odx_p1_closed_form(g.get(), objective.alpha1.c_str(), objective.alpha2.c_str(), &r));
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Result result(r);
    if (!policy_out.empty()) check(odx_policy_save(g.get(), odx_solve_result_policy(result.get()), policy_out.c_str()));
    char* transmitted = nullptr;
    check(odx_policy_comm_cost(g.get(), odx_solve_result_policy(result.get()), &transmitted));
    std::cout << "objective: " << objective.variant << "\n"
              << "optimal_cost: " << odx_solve_result_cost(result.get()) << "\n"
              << "monolog1_cost: " << monolog_cost(g.get(), 1, obj.get()) << "\n"
              << "monolog2_cost: " << monolog_cost(g.get(), 2, obj.get()) << "\n"
              << "scan_bytes: " << take(transmitted) << "\n"
              << "method: " << odx_solve_result_method(result.get()) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    std::cout << "solve_time_ms: " << buf << "\n";
  }
};

struct CheckMonologCmd {
  std::string graph;
  int side = 1;
  bool hall = false;
  std::string policy_out;
  ObjectiveFlags objective;

  int run() {
    Graph g = load_graph(graph);
    Objective obj = objective.make();
    odx_ghc_certificate* c = nullptr;
    check(odx_check_ghc(g.get(), obj.get(), side, &c));
    Ghc cert(c);
    char* json = nullptr;
    check(odx_ghc_to_json(g.get(), cert.get(), &json));
    std::cout << take(json);
    if (hall) {
      int saturated = 0;
      check(odx_check_hall_uniform(g.get(), obj.get(), side, &saturated));
      std::cout << "hall_saturated: " << (saturated ? "true" : "false") << "\n";
    }
    if (!policy_out.empty()) {
      check(odx_policy_save(g.get(), odx_ghc_improving_policy(cert.get()), policy_out.c_str()));
    }
    return kExitOk;
  }
};

struct SimulateCmd {
  std::string graph;
  std::string policy;
  std::string ground_truth;
  std::string broker = "third-party";
  std::string trace_out = "-";
  std::string strategies_out;
  std::optional<std::string> metadata_bytes;
  std::uint64_t closure_bytes = 64;
  bool channel_down = false;
  ObjectiveFlags objective;

  void run() {
    Graph g = load_graph(graph);
    Objective obj = objective.make();
    odx_rendezvous_config* raw = nullptr;
    check(odx_rendezvous_config_create(obj.get(), &raw));
    Config cfg(raw);
    if (!ground_truth.empty()) {
      check(odx_rendezvous_config_set_ground_truth(cfg.get(), g.get(), read_text(ground_truth).c_str()));
    }
    check(odx_rendezvous_config_set_channel_alive(cfg.get(), channel_down ? 0 : 1));
    check(odx_rendezvous_config_set_broker(cfg.get(), broker == "robot1"   ? ODX_BROKER_ROBOT1
                                                      : broker == "robot2" ? ODX_BROKER_ROBOT2
                                                                           : ODX_BROKER_THIRD_PARTY));
    check(odx_rendezvous_config_set_closure_bytes(cfg.get(), closure_bytes));
    if (metadata_bytes) check(odx_rendezvous_config_set_metadata_bytes(cfg.get(), metadata_bytes->c_str()));

    Policy pol;
    if (!policy.empty()) {
      odx_policy* p = nullptr;
      check(odx_policy_load(g.get(), policy.c_str(), &p));
      pol.reset(p);
    }
    odx_trace* t = nullptr;
    check(odx_rendezvous_run(g.get(), cfg.get(), pol.get(), &t));
    Trace trace(t);
    char* log = nullptr;
    check(odx_trace_log(g.get(), trace.get(), &log));
    write_text(trace_out, take(log));
    if (!strategies_out.empty()) {
      char* csv = nullptr;
      check(odx_compare_strategies_csv(g.get(), cfg.get(), &csv));
      write_text(strategies_out, take(csv));
    }
  }
};

struct SweepCmd {
  std::string parameter;
  std::string from, to, step;
  std::string out = "-";
  std::string graph;
  bool gnuplot = false;
  GeometricFlags geo;
  AppearanceFlags app;
  ObjectiveFlags objective;

  int run() {
    Objective obj = objective.make();
    char* csv = nullptr;
    char* note = nullptr;
    int nested = 1;
    if (parameter == "dmax" || parameter == "eta") {
      auto [t1, t2] = geo.load();
      check(odx_sweep_geometric(t1.get(), t2.get(), &geo.params, obj.get(),
                                parameter == "dmax" ? ODX_SWEEP_DMAX : ODX_SWEEP_ETA, from.c_str(), to.c_str(),
                                step.c_str(), gnuplot ? 1 : 0, &csv, &note, &nested));
    } else if (parameter == "alpha") {
      auto in = app.load();
      check(odx_sweep_appearance(in.scores.get(), in.f1.data(), in.f1.size(), in.f2.data(), in.f2.size(),
                                 app.descriptor_bytes, &app.params, obj.get(), from.c_str(), to.c_str(),
                                 step.c_str(), gnuplot ? 1 : 0, &csv, &note, &nested));
    } else {
      if (graph.empty()) throw Failure{ODX_ERR_INVALID_ARGUMENT, "omega sweep needs --graph"};
      Graph g = load_graph(graph);
      check(odx_sweep_omega(g.get(), obj.get(), from.c_str(), to.c_str(), step.c_str(), gnuplot ? 1 : 0, &csv,
                            &note, &nested));
    }
    write_text(out, take(csv));
    std::cerr << take(note) << "\n";
    return nested ? kExitOk : kExitInvariant;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odx: plan sensory-data exchange between two rendezvousing robots"};
  app.require_subcommand(1);

  BuildGraphCmd build;
  auto* build_cmd = app.add_subcommand("build-graph", "build an exchange graph from poses or scores");
  build_cmd->add_option("--mode", build.mode, "geometric or appearance")
      ->check(CLI::IsMember({"geometric", "appearance"}));
  build_cmd->add_option("--out,-o", build.out, "output graph file (default stdout)");
  build.geo.attach(build_cmd);
  // Appearance options that do not clash with the geometric ones.
  build.app.params = {};
  odx_appearance_params_default(&build.app.params);
  build_cmd->add_option("--scores", build.app.scores, "similarity score file");
  build_cmd->add_option("--alpha", build.app.params.alpha, "score threshold");
  build_cmd->add_option("--top-k", build.app.params.top_k, "candidates kept per query");
  build_cmd->add_flag("--symmetric", build.app.params.symmetric, "query from both robots");

  SolveCmd solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve for an optimal exchange policy");
  solve_cmd->add_option("--graph", solve.graph, "graph file")->required();
  solve_cmd->add_option("--policy-out", solve.policy_out, "write the optimal policy here");
  solve_cmd->add_option("--method", solve.method, "flow, matching, brute-force or closed-form")
      ->check(CLI::IsMember({"flow", "matching", "brute-force", "closed-form"}));
  solve.objective.attach(solve_cmd);

  CheckMonologCmd ghc;
  auto* ghc_cmd = app.add_subcommand("check-monolog", "certify whether a monolog is optimal");
  ghc_cmd->add_option("--graph", ghc.graph, "graph file")->required();
  ghc_cmd->add_option("--side", ghc.side, "transmitting robot (1 or 2)")->check(CLI::IsMember({1, 2}));
  ghc_cmd->add_flag("--hall", ghc.hall, "also test Hall saturation (uniform weights)");
  ghc_cmd->add_option("--policy-out", ghc.policy_out, "write the improving policy here");
  ghc.objective.attach(ghc_cmd);

  SimulateCmd sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run the broker-mediated rendezvous");
  sim_cmd->add_option("--graph", sim.graph, "graph file")->required();
  sim_cmd->add_option("--policy", sim.policy, "policy file (default: broker solves)");
  sim_cmd->add_option("--ground-truth", sim.ground_truth, "true loop closures, one 'u v' pair per line");
  sim_cmd->add_option("--broker", sim.broker, "third-party, robot1 or robot2")
      ->check(CLI::IsMember({"third-party", "robot1", "robot2"}));
  sim_cmd->add_option("--trace-out", sim.trace_out, "message log (default stdout)");
  sim_cmd->add_option("--strategies-out", sim.strategies_out, "strategy comparison CSV");
  sim_cmd->add_option("--metadata-bytes", sim.metadata_bytes, "metadata bytes per pose");
  sim_cmd->add_option("--closure-bytes", sim.closure_bytes, "bytes per shared loop closure");
  sim_cmd->add_flag("--channel-down", sim.channel_down, "link drops after the scan exchange");
  sim.objective.attach(sim_cmd);

  SweepCmd sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter and tabulate strategy costs");
  sweep_cmd->add_option("--param", sweep.parameter, "dmax, eta, alpha or omega")
      ->required()
      ->check(CLI::IsMember({"dmax", "eta", "alpha", "omega"}));
  sweep_cmd->add_option("--from", sweep.from, "first value")->required();
  sweep_cmd->add_option("--to", sweep.to, "last value")->required();
  sweep_cmd->add_option("--step", sweep.step, "increment")->required();
  sweep_cmd->add_option("--out,-o", sweep.out, "CSV output (default stdout)");
  sweep_cmd->add_option("--graph", sweep.graph, "graph file for omega sweeps");
  sweep_cmd->add_flag("--gnuplot", sweep.gnuplot, "append a gnuplot data block");
  sweep.geo.attach(sweep_cmd);
  odx_appearance_params_default(&sweep.app.params);
  sweep_cmd->add_option("--scores", sweep.app.scores, "similarity score file");
  sweep_cmd->add_option("--alpha", sweep.app.params.alpha, "score threshold");
  sweep_cmd->add_option("--top-k", sweep.app.params.top_k, "candidates kept per query");
  sweep_cmd->add_flag("--symmetric", sweep.app.params.symmetric, "query from both robots");
  sweep.objective.attach(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  auto share_appearance = [](const GeometricFlags& geo, AppearanceFlags& a) {
    a.features1 = geo.features1;
    a.features2 = geo.features2;
    a.descriptor_bytes = geo.params.descriptor_bytes;
  };

  try {
    if (*build_cmd) {
      share_appearance(build.geo, build.app);
      build.run();
    } else if (*solve_cmd) {
      solve.run();
    } else if (*ghc_cmd) {
      return ghc.run();
    } else if (*sim_cmd) {
      sim.run();
    } else if (*sweep_cmd) {
      share_appearance(sweep.geo, sweep.app);
      return sweep.run();
    }
  } catch (const Failure& f) {
    std::cerr << "odx: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "odx: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
