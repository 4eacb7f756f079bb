#include "odx/odx.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "odx/candidates.hpp"
#include "odx/error.hpp"
#include "odx/graph.hpp"
#include "odx/policy.hpp"
#include "odx/protocol.hpp"
#include "odx/solver.hpp"
#include "odx/sweep.hpp"

struct odx_graph {
  odx::ExchangeGraph value;
};
struct odx_objective {
  odx::Objective value;
};
struct odx_policy {
  odx::Policy value;
};
struct odx_solve_result {
  odx::SolveResult value;
  std::string cost;
  std::string certificate;
  odx_policy policy;
};
struct odx_ghc_certificate {
  odx::GhcCertificate value;
  odx_policy improving;
};
struct odx_trajectory {
  odx::Trajectory value;
};
struct odx_scores {
  std::vector<odx::Score> value;
};
struct odx_rendezvous_config {
  odx::RendezvousConfig value;
};
struct odx_trace {
  odx::RendezvousTrace value;
};

namespace {

thread_local std::string g_last_error;

odx_status status_of(odx::ErrorKind kind) {
  using odx::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return ODX_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse: return ODX_ERR_PARSE;
    case ErrorKind::kIo: return ODX_ERR_IO;
    case ErrorKind::kDuplicateEdge: return ODX_ERR_DUPLICATE_EDGE;
    case ErrorKind::kNegativeWeight: return ODX_ERR_NEGATIVE_WEIGHT;
    case ErrorKind::kIndexOutOfRange: return ODX_ERR_INDEX_OUT_OF_RANGE;
    case ErrorKind::kUnknownVertex: return ODX_ERR_UNKNOWN_VERTEX;
    case ErrorKind::kLabelDomainMismatch: return ODX_ERR_LABEL_DOMAIN_MISMATCH;
    case ErrorKind::kEmptySide: return ODX_ERR_EMPTY_SIDE;
    case ErrorKind::kInadmissiblePolicy: return ODX_ERR_INADMISSIBLE_POLICY;
    case ErrorKind::kNonUniformWeights: return ODX_ERR_NON_UNIFORM_WEIGHTS;
    case ErrorKind::kEmptyTrajectory: return ODX_ERR_EMPTY_TRAJECTORY;
    case ErrorKind::kScoreOutOfRange: return ODX_ERR_SCORE_OUT_OF_RANGE;
    case ErrorKind::kGroundTruthOutsideCandidates: return ODX_ERR_GROUND_TRUTH_OUTSIDE_CANDIDATES;
    case ErrorKind::kInvariantViolation: return ODX_ERR_INVARIANT;
  }
  return ODX_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
odx_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return ODX_OK;
  } catch (const odx::Error& e) {
    g_last_error = std::string(odx::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ODX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ODX_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ODX_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw odx::Error(odx::ErrorKind::kInvalidArgument, what);
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

odx::Rational rational_or(const char* text, long fallback) {
  return text == nullptr ? odx::Rational(fallback) : odx::parse_rational(text);
}

odx::GeometryParams geometry_from(const odx_geometry_params* p) {
  odx::GeometryParams out;
  if (p != nullptr) {
    out.d_max = p->d_max;
    out.eta = p->eta;
    out.rate_divisor = p->rate_divisor;
    out.fov_half_angle = p->fov_half_angle;
    out.fov_range = p->fov_range;
    out.descriptor_bytes = p->descriptor_bytes;
  }
  return out;
}

odx::AppearanceParams appearance_from(const odx_appearance_params* p) {
  odx::AppearanceParams out;
  if (p != nullptr) {
    out.alpha = p->alpha;
    out.top_k = p->top_k;
    out.symmetric = p->symmetric != 0;
  }
  return out;
}

std::string edge_list_json(const odx::ExchangeGraph& graph, const std::vector<std::size_t>& edges) {
  std::string out = "[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const odx::Edge& e = graph.edges()[edges[i]];
    out += (i ? ", " : "") + std::string("[") + std::to_string(graph.vertex(e.u).id.index) + ", " +
           std::to_string(graph.vertex(e.v).id.index) + "]";
  }
  return out + "]";
}

std::string id_list_json(const std::vector<odx::VertexId>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out += (i ? ", " : "") + std::string("{\"side\": ") + std::to_string(odx::robot_number(ids[i].side)) +
           ", \"index\": " + std::to_string(ids[i].index) + "}";
  }
  return out + "]";
}

std::string quoted(const odx::Rational& value) { return "\"" + odx::to_string(value) + "\""; }

void emit_sweep(const odx::SweepReport& report, int gnuplot, char** csv, char** text_report, int* nested) {
  require(csv != nullptr, "csv output pointer is null");
  std::string body = odx::sweep_csv(report);
  if (gnuplot != 0) body += "\n" + odx::sweep_gnuplot(report, odx::to_string(report.parameter));
  *csv = duplicate(body);
  if (text_report != nullptr) *text_report = duplicate(report.nesting_note);
  if (nested != nullptr) *nested = report.nested ? 1 : 0;
}

}  // namespace

extern "C" {

const char* odx_last_error(void) { return g_last_error.c_str(); }

const char* odx_status_name(odx_status status) {
  switch (status) {
    case ODX_OK: return "ok";
    case ODX_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case ODX_ERR_PARSE: return "ParseError";
    case ODX_ERR_IO: return "IoError";
    case ODX_ERR_DUPLICATE_EDGE: return "DuplicateEdge";
    case ODX_ERR_NEGATIVE_WEIGHT: return "NegativeWeight";
    case ODX_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case ODX_ERR_UNKNOWN_VERTEX: return "UnknownVertex";
    case ODX_ERR_LABEL_DOMAIN_MISMATCH: return "LabelDomainMismatch";
    case ODX_ERR_EMPTY_SIDE: return "EmptySide";
    case ODX_ERR_INADMISSIBLE_POLICY: return "InadmissiblePolicy";
    case ODX_ERR_NON_UNIFORM_WEIGHTS: return "NonUniformWeights";
    case ODX_ERR_EMPTY_TRAJECTORY: return "EmptyTrajectory";
    case ODX_ERR_SCORE_OUT_OF_RANGE: return "ScoreOutOfRange";
    case ODX_ERR_GROUND_TRUTH_OUTSIDE_CANDIDATES: return "GroundTruthOutsideCandidates";
    case ODX_ERR_INVARIANT: return "InvariantViolation";
    case ODX_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

int odx_status_is_parse_error(odx_status status) { return status == ODX_ERR_PARSE || status == ODX_ERR_IO; }

int odx_status_is_validation_error(odx_status status) {
  return status >= ODX_ERR_DUPLICATE_EDGE && status <= ODX_ERR_GROUND_TRUTH_OUTSIDE_CANDIDATES;
}

void odx_string_free(char* text) { std::free(text); }

odx_status odx_objective_create(odx_variant variant, const char* alpha1, const char* alpha2, const char* omega,
                                odx_objective** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    odx::Objective o;
    switch (variant) {
      case ODX_P1: o.variant = odx::Variant::kP1; break;
      case ODX_P2: o.variant = odx::Variant::kP2; break;
      case ODX_P3: o.variant = odx::Variant::kP3; break;
      default: throw odx::Error(odx::ErrorKind::kInvalidArgument, "unknown objective variant");
    }
    o.alpha1 = rational_or(alpha1, 1);
    o.alpha2 = rational_or(alpha2, 1);
    o.omega = rational_or(omega, 0);
    o.validate();
    *out = new odx_objective{std::move(o)};
  });
}

void odx_objective_free(odx_objective* objective) { delete objective; }

odx_status odx_graph_parse(const char* json_text, odx_graph** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "null argument");
    *out = new odx_graph{odx::parse_graph_json(json_text)};
  });
}

odx_status odx_graph_load(const char* path, odx_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new odx_graph{odx::load_graph(path)};
  });
}

odx_status odx_graph_save(const odx_graph* graph, const char* path) {
  return guarded([&] {
    require(graph != nullptr && path != nullptr, "null argument");
    odx::save_graph(graph->value, path);
  });
}

odx_status odx_graph_to_json(const odx_graph* graph, char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::graph_to_json(graph->value));
  });
}

odx_status odx_graph_build(const char* const* v1_weights, size_t n1, const char* const* v2_weights, size_t n2,
                           const uint64_t* edge_u, const uint64_t* edge_v, const char* const* edge_costs,
                           size_t edge_count, odx_graph** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require((n1 == 0 || v1_weights != nullptr) && (n2 == 0 || v2_weights != nullptr), "null weight array");
    require(edge_count == 0 || (edge_u != nullptr && edge_v != nullptr), "null edge array");
    std::vector<odx::Rational> w1, w2;
    for (size_t i = 0; i < n1; ++i) w1.push_back(odx::parse_rational(v1_weights[i]));
    for (size_t i = 0; i < n2; ++i) w2.push_back(odx::parse_rational(v2_weights[i]));
    std::vector<odx::EdgeSpec> edges;
    for (size_t k = 0; k < edge_count; ++k) {
      edges.push_back({edge_u[k], edge_v[k],
                       edge_costs == nullptr ? odx::Rational(1) : odx::parse_rational(edge_costs[k])});
    }
    *out = new odx_graph{odx::build_graph(w1, w2, edges)};
  });
}

void odx_graph_free(odx_graph* graph) { delete graph; }

size_t odx_graph_vertex_count(const odx_graph* graph, int side) {
  if (graph == nullptr || (side != 1 && side != 2)) return 0;
  return graph->value.size(side == 1 ? odx::Side::kRobot1 : odx::Side::kRobot2);
}

size_t odx_graph_edge_count(const odx_graph* graph) { return graph == nullptr ? 0 : graph->value.edge_count(); }

size_t odx_graph_pruned_count(const odx_graph* graph) {
  return graph == nullptr ? 0 : graph->value.pruned().size();
}

odx_status odx_graph_effective_weight(const odx_graph* graph, int side, uint64_t index,
                                      const odx_objective* objective, char** out) {
  return guarded([&] {
    require(graph != nullptr && objective != nullptr && out != nullptr, "null argument");
    const odx::VertexId id{odx::side_from_robot(side), index};
    *out = duplicate(odx::to_string(odx::effective_weight(graph->value, id, objective->value)));
  });
}

void odx_geometry_params_default(odx_geometry_params* params) {
  if (params == nullptr) return;
  const odx::GeometryParams d;
  *params = {d.d_max, d.eta, d.rate_divisor, d.fov_half_angle, d.fov_range, d.descriptor_bytes};
}

void odx_appearance_params_default(odx_appearance_params* params) {
  if (params == nullptr) return;
  const odx::AppearanceParams d;
  *params = {d.alpha, d.top_k, d.symmetric ? 1 : 0};
}

odx_status odx_trajectory_load_kitti(const char* pose_path, const char* feature_path,
                                     uint64_t default_feature_count, odx_trajectory** out) {
  return guarded([&] {
    require(pose_path != nullptr && out != nullptr, "null argument");
    std::vector<odx::Pose> poses = odx::load_kitti_poses(pose_path);
    std::vector<std::uint64_t> counts = feature_path != nullptr
                                            ? odx::load_feature_counts(feature_path)
                                            : std::vector<std::uint64_t>(poses.size(), default_feature_count);
    *out = new odx_trajectory{odx::make_trajectory(std::move(poses), counts)};
  });
}

odx_status odx_trajectory_slice(const odx_trajectory* trajectory, size_t begin, size_t end, odx_trajectory** out) {
  return guarded([&] {
    require(trajectory != nullptr && out != nullptr, "null argument");
    *out = new odx_trajectory{trajectory->value.slice(begin, end)};
  });
}

size_t odx_trajectory_size(const odx_trajectory* trajectory) {
  return trajectory == nullptr ? 0 : trajectory->value.size();
}

void odx_trajectory_free(odx_trajectory* trajectory) { delete trajectory; }

odx_status odx_graph_build_geometric(const odx_trajectory* t1, const odx_trajectory* t2,
                                     const odx_geometry_params* params, odx_graph** out) {
  return guarded([&] {
    require(t1 != nullptr && t2 != nullptr && out != nullptr, "null argument");
    *out = new odx_graph{odx::build_geometric(t1->value, t2->value, geometry_from(params))};
  });
}

odx_status odx_scores_load(const char* path, odx_scores** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new odx_scores{odx::load_scores(path)};
  });
}

void odx_scores_free(odx_scores* scores) { delete scores; }

odx_status odx_graph_build_appearance(const odx_scores* scores, const uint64_t* features1, size_t n1,
                                      const uint64_t* features2, size_t n2, uint64_t descriptor_bytes,
                                      const odx_appearance_params* params, odx_graph** out) {
  return guarded([&] {
    require(scores != nullptr && out != nullptr, "null argument");
    require((n1 == 0 || features1 != nullptr) && (n2 == 0 || features2 != nullptr), "null feature array");
    const auto w1 = odx::scan_weights(std::span<const std::uint64_t>(features1, n1), descriptor_bytes);
    const auto w2 = odx::scan_weights(std::span<const std::uint64_t>(features2, n2), descriptor_bytes);
    *out = new odx_graph{odx::build_appearance(scores->value, w1, w2, appearance_from(params))};
  });
}

odx_status odx_feature_counts_load(const char* path, uint64_t** counts, size_t* count) {
  return guarded([&] {
    require(path != nullptr && counts != nullptr && count != nullptr, "null argument");
    const std::vector<std::uint64_t> loaded = odx::load_feature_counts(path);
    auto* buffer = static_cast<uint64_t*>(std::malloc(std::max<std::size_t>(1, loaded.size()) * sizeof(uint64_t)));
    if (buffer == nullptr) throw std::bad_alloc();
    std::copy(loaded.begin(), loaded.end(), buffer);
    *counts = buffer;
    *count = loaded.size();
  });
}

void odx_feature_counts_free(uint64_t* counts) { std::free(counts); }

odx_status odx_policy_monolog(const odx_graph* graph, int side, odx_policy** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = new odx_policy{odx::monolog(graph->value, odx::side_from_robot(side))};
  });
}

odx_status odx_policy_load(const odx_graph* graph, const char* path, odx_policy** out) {
  return guarded([&] {
    require(graph != nullptr && path != nullptr && out != nullptr, "null argument");
    *out = new odx_policy{odx::load_policy(graph->value, path)};
  });
}

odx_status odx_policy_save(const odx_graph* graph, const odx_policy* policy, const char* path) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && path != nullptr, "null argument");
    odx::save_policy(graph->value, policy->value, path);
  });
}

odx_status odx_policy_to_json(const odx_graph* graph, const odx_policy* policy, char** out) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::policy_to_json(graph->value, policy->value));
  });
}

odx_policy* odx_policy_clone(const odx_policy* policy) {
  if (policy == nullptr) return nullptr;
  return new (std::nothrow) odx_policy{policy->value};
}

void odx_policy_free(odx_policy* policy) { delete policy; }

odx_status odx_policy_is_admissible(const odx_graph* graph, const odx_policy* policy, int* out) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && out != nullptr, "null argument");
    *out = odx::is_admissible(graph->value, policy->value) ? 1 : 0;
  });
}

odx_status odx_policy_comm_cost(const odx_graph* graph, const odx_policy* policy, char** out) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::to_string(odx::comm_cost(graph->value, policy->value)));
  });
}

odx_status odx_policy_objective_cost(const odx_graph* graph, const odx_policy* policy,
                                     const odx_objective* objective, char** out) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && objective != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::to_string(odx::objective_cost(graph->value, policy->value, objective->value)));
  });
}

odx_status odx_policy_workloads(const odx_graph* graph, const odx_policy* policy, const odx_objective* objective,
                                char** out) {
  return guarded([&] {
    require(graph != nullptr && policy != nullptr && objective != nullptr && out != nullptr, "null argument");
    const odx::WorkloadReport w =
        odx::workloads(graph->value, policy->value, objective->value.alpha1, objective->value.alpha2);
    *out = duplicate("{\"ell1\": " + quoted(w.ell1) + ", \"ell2\": " + quoted(w.ell2) +
                     ", \"balance\": " + quoted(w.balance) + ", \"l1\": " + edge_list_json(graph->value, w.l1_edges) +
                     ", \"l2\": " + edge_list_json(graph->value, w.l2_edges) +
                     ", \"l12\": " + edge_list_json(graph->value, w.l12_edges) + "}");
  });
}

namespace {

odx_solve_result* wrap(odx::SolveResult result) {
  auto* out = new odx_solve_result{std::move(result), {}, {}, {}};
  out->cost = odx::to_string(out->value.optimal_cost);
  out->certificate = odx::to_string(out->value.certificate_value);
  out->policy.value = out->value.policy;
  return out;
}

}  // namespace

odx_status odx_solve(const odx_graph* graph, const odx_objective* objective, odx_solve_result** out) {
  return guarded([&] {
    require(graph != nullptr && objective != nullptr && out != nullptr, "null argument");
    *out = wrap(odx::solve(graph->value, objective->value));
  });
}

odx_status odx_solve_uniform_matching(const odx_graph* graph, const odx_objective* objective,
                                      odx_solve_result** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = wrap(odx::solve_uniform_matching(graph->value,
                                            objective != nullptr ? objective->value : odx::Objective::p2()));
  });
}

odx_status odx_solve_brute_force(const odx_graph* graph, const odx_objective* objective, odx_solve_result** out) {
  return guarded([&] {
    require(graph != nullptr && objective != nullptr && out != nullptr, "null argument");
    *out = wrap(odx::solve_brute_force(graph->value, objective->value));
  });
}

odx_status odx_p1_closed_form(const odx_graph* graph, const char* alpha1, const char* alpha2,
                              odx_solve_result** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = wrap(odx::p1_closed_form(graph->value, rational_or(alpha1, 1), rational_or(alpha2, 1)));
  });
}

void odx_solve_result_free(odx_solve_result* result) { delete result; }

const odx_policy* odx_solve_result_policy(const odx_solve_result* result) {
  return result == nullptr ? nullptr : &result->policy;
}

const char* odx_solve_result_cost(const odx_solve_result* result) {
  return result == nullptr ? "" : result->cost.c_str();
}

const char* odx_solve_result_certificate(const odx_solve_result* result) {
  return result == nullptr ? "" : result->certificate.c_str();
}

const char* odx_solve_result_method(const odx_solve_result* result) {
  return result == nullptr ? "" : odx::to_string(result->value.method);
}

odx_status odx_check_ghc(const odx_graph* graph, const odx_objective* objective, int side,
                         odx_ghc_certificate** out) {
  return guarded([&] {
    require(graph != nullptr && objective != nullptr && out != nullptr, "null argument");
    odx::GhcCertificate cert = odx::check_ghc(graph->value, objective->value, odx::side_from_robot(side));
    odx_policy improving{cert.improving_policy};
    *out = new odx_ghc_certificate{std::move(cert), std::move(improving)};
  });
}

void odx_ghc_free(odx_ghc_certificate* certificate) { delete certificate; }

int odx_ghc_holds(const odx_ghc_certificate* certificate) {
  return certificate != nullptr && certificate->value.holds ? 1 : 0;
}

const odx_policy* odx_ghc_improving_policy(const odx_ghc_certificate* certificate) {
  return certificate == nullptr ? nullptr : &certificate->improving;
}

odx_status odx_ghc_to_json(const odx_graph* graph, const odx_ghc_certificate* certificate, char** out) {
  return guarded([&] {
    require(graph != nullptr && certificate != nullptr && out != nullptr, "null argument");
    const odx::GhcCertificate& c = certificate->value;
    std::string text = "{\n  \"side\": " + std::to_string(odx::robot_number(c.side)) +
                       ",\n  \"holds\": " + (c.holds ? "true" : "false") +
                       ",\n  \"monolog_cost\": " + quoted(c.monolog_cost) +
                       ",\n  \"optimal_cost\": " + quoted(c.optimal_cost) +
                       ",\n  \"witness\": " + id_list_json(c.witness) +
                       ",\n  \"witness_weight\": " + quoted(c.witness_weight) +
                       ",\n  \"neighborhood\": " + id_list_json(c.neighborhood) +
                       ",\n  \"neighborhood_weight\": " + quoted(c.neighborhood_weight) +
                       ",\n  \"improving_policy\": " + id_list_json(odx::transmitted(graph->value, c.improving_policy)) +
                       ",\n  \"improving_cost\": " + quoted(c.improving_cost) + "\n}\n";
    *out = duplicate(text);
  });
}

odx_status odx_check_hall_uniform(const odx_graph* graph, const odx_objective* objective, int side, int* out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = odx::check_hall_uniform(graph->value, odx::side_from_robot(side),
                                   objective != nullptr ? objective->value : odx::Objective::p2())
               ? 1
               : 0;
  });
}

odx_status odx_rendezvous_config_create(const odx_objective* objective, odx_rendezvous_config** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    odx::RendezvousConfig config;
    if (objective != nullptr) config.objective = objective->value;
    *out = new odx_rendezvous_config{std::move(config)};
  });
}

void odx_rendezvous_config_free(odx_rendezvous_config* config) { delete config; }

odx_status odx_rendezvous_config_set_ground_truth(odx_rendezvous_config* config, const odx_graph* graph,
                                                  const char* text) {
  return guarded([&] {
    require(config != nullptr && graph != nullptr && text != nullptr, "null argument");
    config->value.ground_truth = odx::parse_ground_truth(graph->value, text);
  });
}

odx_status odx_rendezvous_config_set_channel_alive(odx_rendezvous_config* config, int alive) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    config->value.channel_alive_after_exchange = alive != 0;
  });
}

odx_status odx_rendezvous_config_set_broker(odx_rendezvous_config* config, odx_broker_placement placement) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    switch (placement) {
      case ODX_BROKER_THIRD_PARTY: config->value.broker = odx::BrokerPlacement::kThirdParty; break;
      case ODX_BROKER_ROBOT1: config->value.broker = odx::BrokerPlacement::kRobot1; break;
      case ODX_BROKER_ROBOT2: config->value.broker = odx::BrokerPlacement::kRobot2; break;
      default: throw odx::Error(odx::ErrorKind::kInvalidArgument, "unknown broker placement");
    }
  });
}

odx_status odx_rendezvous_config_set_closure_bytes(odx_rendezvous_config* config, uint64_t bytes) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    config->value.closure_bytes = bytes;
  });
}

odx_status odx_rendezvous_config_set_metadata_bytes(odx_rendezvous_config* config, const char* bytes) {
  return guarded([&] {
    require(config != nullptr, "null argument");
    if (bytes == nullptr) {
      config->value.metadata_bytes_per_vertex.reset();
      return;
    }
    odx::Rational value = odx::parse_rational(bytes);
    if (value < 0) throw odx::Error(odx::ErrorKind::kNegativeWeight, "metadata size must be non-negative");
    config->value.metadata_bytes_per_vertex = std::move(value);
  });
}

odx_status odx_rendezvous_run(const odx_graph* graph, const odx_rendezvous_config* config,
                              const odx_policy* policy, odx_trace** out) {
  return guarded([&] {
    require(graph != nullptr && config != nullptr && out != nullptr, "null argument");
    *out = new odx_trace{policy == nullptr ? odx::run_rendezvous(graph->value, config->value)
                                           : odx::run_with_policy(graph->value, config->value, policy->value, true)};
  });
}

void odx_trace_free(odx_trace* trace) { delete trace; }

odx_status odx_trace_log(const odx_graph* graph, const odx_trace* trace, char** out) {
  return guarded([&] {
    require(graph != nullptr && trace != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::trace_log(graph->value, trace->value));
  });
}

odx_status odx_trace_summary_json(const odx_graph* graph, const odx_trace* trace, char** out) {
  return guarded([&] {
    require(graph != nullptr && trace != nullptr && out != nullptr, "null argument");
    const odx::RendezvousTrace& t = trace->value;
    const odx::ExchangeGraph& g = graph->value;
    *out = duplicate("{\"metadata_bytes\": " + quoted(t.metadata_bytes) + ", \"scan_bytes\": " +
                     quoted(t.scan_bytes) + ", \"closure_bytes\": " + quoted(t.closure_bytes) +
                     ", \"ell1\": " + quoted(t.ell1) + ", \"ell2\": " + quoted(t.ell2) +
                     ", \"discovered1\": " + edge_list_json(g, t.discovered1) +
                     ", \"discovered2\": " + edge_list_json(g, t.discovered2) +
                     ", \"undelivered1\": " + edge_list_json(g, t.undelivered1) +
                     ", \"undelivered2\": " + edge_list_json(g, t.undelivered2) + "}\n");
  });
}

odx_status odx_compare_strategies_csv(const odx_graph* graph, const odx_rendezvous_config* config, char** out) {
  return guarded([&] {
    require(graph != nullptr && config != nullptr && out != nullptr, "null argument");
    *out = duplicate(odx::strategies_csv(odx::compare_strategies(graph->value, config->value)));
  });
}

namespace {

odx::SweepSpec spec_from(odx::SweepParameter parameter, const char* from, const char* to, const char* step) {
  require(from != nullptr && to != nullptr && step != nullptr, "sweep bounds are null");
  odx::SweepSpec spec{parameter, odx::parse_rational(from), odx::parse_rational(to), odx::parse_rational(step)};
  spec.validate();
  return spec;
}

odx::SweepParameter parameter_from(odx_sweep_parameter parameter) {
  switch (parameter) {
    case ODX_SWEEP_DMAX: return odx::SweepParameter::kDMax;
    case ODX_SWEEP_ETA: return odx::SweepParameter::kEta;
    case ODX_SWEEP_ALPHA: return odx::SweepParameter::kAlpha;
    case ODX_SWEEP_OMEGA: return odx::SweepParameter::kOmega;
  }
  throw odx::Error(odx::ErrorKind::kInvalidArgument, "unknown sweep parameter");
}

}  // namespace

odx_status odx_sweep_geometric(const odx_trajectory* t1, const odx_trajectory* t2, const odx_geometry_params* base,
                               const odx_objective* objective, odx_sweep_parameter parameter, const char* from,
                               const char* to, const char* step, int gnuplot, char** csv, char** report,
                               int* nested) {
  return guarded([&] {
    require(t1 != nullptr && t2 != nullptr, "null trajectory");
    const odx::SweepSpec spec = spec_from(parameter_from(parameter), from, to, step);
    const odx::SweepReport r = odx::sweep_geometric(
        t1->value, t2->value, geometry_from(base), spec,
        objective != nullptr ? objective->value : odx::Objective::p2());
    emit_sweep(r, gnuplot, csv, report, nested);
  });
}

odx_status odx_sweep_appearance(const odx_scores* scores, const uint64_t* features1, size_t n1,
                                const uint64_t* features2, size_t n2, uint64_t descriptor_bytes,
                                const odx_appearance_params* base, const odx_objective* objective, const char* from,
                                const char* to, const char* step, int gnuplot, char** csv, char** report,
                                int* nested) {
  return guarded([&] {
    require(scores != nullptr, "null scores");
    require((n1 == 0 || features1 != nullptr) && (n2 == 0 || features2 != nullptr), "null feature array");
    const odx::SweepSpec spec = spec_from(odx::SweepParameter::kAlpha, from, to, step);
    const auto w1 = odx::scan_weights(std::span<const std::uint64_t>(features1, n1), descriptor_bytes);
    const auto w2 = odx::scan_weights(std::span<const std::uint64_t>(features2, n2), descriptor_bytes);
    const odx::SweepReport r =
        odx::sweep_appearance(scores->value, w1, w2, appearance_from(base), spec,
                              objective != nullptr ? objective->value : odx::Objective::p2());
    emit_sweep(r, gnuplot, csv, report, nested);
  });
}

odx_status odx_sweep_omega(const odx_graph* graph, const odx_objective* objective, const char* from, const char* to,
                           const char* step, int gnuplot, char** csv, char** report, int* nested) {
  return guarded([&] {
    require(graph != nullptr, "null graph");
    const odx::SweepSpec spec = spec_from(odx::SweepParameter::kOmega, from, to, step);
    const odx::SweepReport r =
        odx::sweep_omega(graph->value, spec, objective != nullptr ? objective->value : odx::Objective::p2());
    emit_sweep(r, gnuplot, csv, report, nested);
  });
}

}  // extern "C"
