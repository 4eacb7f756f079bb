/*
 * odx: optimal sensory-data exchange planning for two-robot rendezvous.
 *
 * C interface over opaque handles. Every fallible call returns an
 * odx_status; on failure odx_last_error() describes the problem for the
 * calling thread. Exact quantities (weights, costs, bytes) cross the
 * boundary as decimal strings ("12.5") or fractions ("1/3").
 *
 * Strings returned through `char**` are owned by the caller and released
 * with odx_string_free. `const char*` results are owned by the handle.
 */
#ifndef ODX_ODX_H_
#define ODX_ODX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ODX_BUILDING_LIBRARY)
#define ODX_API __declspec(dllexport)
#else
#define ODX_API __declspec(dllimport)
#endif
#else
#define ODX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum odx_status {
  ODX_OK = 0,
  ODX_ERR_INVALID_ARGUMENT = 1,
  ODX_ERR_PARSE = 2,
  ODX_ERR_IO = 3,
  ODX_ERR_DUPLICATE_EDGE = 10,
  ODX_ERR_NEGATIVE_WEIGHT = 11,
  ODX_ERR_INDEX_OUT_OF_RANGE = 12,
  ODX_ERR_UNKNOWN_VERTEX = 13,
  ODX_ERR_LABEL_DOMAIN_MISMATCH = 14,
  ODX_ERR_EMPTY_SIDE = 15,
  ODX_ERR_INADMISSIBLE_POLICY = 16,
  ODX_ERR_NON_UNIFORM_WEIGHTS = 17,
  ODX_ERR_EMPTY_TRAJECTORY = 18,
  ODX_ERR_SCORE_OUT_OF_RANGE = 19,
  ODX_ERR_GROUND_TRUTH_OUTSIDE_CANDIDATES = 20,
  ODX_ERR_INVARIANT = 30,
  ODX_ERR_INTERNAL = 31
} odx_status;

typedef enum odx_variant { ODX_P1 = 1, ODX_P2 = 2, ODX_P3 = 3 } odx_variant;

typedef enum odx_sweep_parameter {
  ODX_SWEEP_DMAX = 0,
  ODX_SWEEP_ETA = 1,
  ODX_SWEEP_ALPHA = 2,
  ODX_SWEEP_OMEGA = 3
} odx_sweep_parameter;

typedef enum odx_broker_placement {
  ODX_BROKER_THIRD_PARTY = 0,
  ODX_BROKER_ROBOT1 = 1,
  ODX_BROKER_ROBOT2 = 2
} odx_broker_placement;

typedef struct odx_graph odx_graph;
typedef struct odx_objective odx_objective;
typedef struct odx_policy odx_policy;
typedef struct odx_solve_result odx_solve_result;
typedef struct odx_ghc_certificate odx_ghc_certificate;
typedef struct odx_trajectory odx_trajectory;
typedef struct odx_scores odx_scores;
typedef struct odx_rendezvous_config odx_rendezvous_config;
typedef struct odx_trace odx_trace;

typedef struct odx_geometry_params {
  double d_max;
  double eta;
  size_t rate_divisor;
  double fov_half_angle;
  double fov_range;
  uint64_t descriptor_bytes;
} odx_geometry_params;

typedef struct odx_appearance_params {
  double alpha;
  size_t top_k;
  int symmetric;
} odx_appearance_params;

/* ---- errors and memory ------------------------------------------------ */

ODX_API const char* odx_last_error(void);
ODX_API const char* odx_status_name(odx_status status);
/* 1 for malformed input (syntax, unreadable files), 0 otherwise. */
ODX_API int odx_status_is_parse_error(odx_status status);
/* 1 for well-formed but invalid input (domain validation failures). */
ODX_API int odx_status_is_validation_error(odx_status status);
ODX_API void odx_string_free(char* text);

/* ---- objective ----------------------------------------------------------- */

/* alpha1, alpha2, omega are exact decimals or fractions; NULL means the
 * default (1, 1, 0). */
ODX_API odx_status odx_objective_create(odx_variant variant, const char* alpha1, const char* alpha2,
                                        const char* omega, odx_objective** out);
ODX_API void odx_objective_free(odx_objective* objective);

/* ---- exchange graph ------------------------------------------------------ */

ODX_API odx_status odx_graph_parse(const char* json_text, odx_graph** out);
ODX_API odx_status odx_graph_load(const char* path, odx_graph** out);
ODX_API odx_status odx_graph_save(const odx_graph* graph, const char* path);
ODX_API odx_status odx_graph_to_json(const odx_graph* graph, char** out);
/* Positional ids; weights and costs as exact numeric strings (costs may be
 * NULL for unit costs). */
ODX_API odx_status odx_graph_build(const char* const* v1_weights, size_t n1, const char* const* v2_weights,
                                   size_t n2, const uint64_t* edge_u, const uint64_t* edge_v,
                                   const char* const* edge_costs, size_t edge_count, odx_graph** out);
ODX_API void odx_graph_free(odx_graph* graph);
/* side is 1 or 2. */
ODX_API size_t odx_graph_vertex_count(const odx_graph* graph, int side);
ODX_API size_t odx_graph_edge_count(const odx_graph* graph);
ODX_API size_t odx_graph_pruned_count(const odx_graph* graph);
ODX_API odx_status odx_graph_effective_weight(const odx_graph* graph, int side, uint64_t index,
                                              const odx_objective* objective, char** out);

/* ---- candidate generation ------------------------------------------------ */

ODX_API void odx_geometry_params_default(odx_geometry_params* params);
ODX_API void odx_appearance_params_default(odx_appearance_params* params);

/* KITTI ground-truth poses plus an optional feature-count file (NULL uses
 * default_feature_count for every pose). */
ODX_API odx_status odx_trajectory_load_kitti(const char* pose_path, const char* feature_path,
                                             uint64_t default_feature_count, odx_trajectory** out);
/* Poses [begin, end) of a trajectory, ids preserved. */
ODX_API odx_status odx_trajectory_slice(const odx_trajectory* trajectory, size_t begin, size_t end,
                                        odx_trajectory** out);
ODX_API size_t odx_trajectory_size(const odx_trajectory* trajectory);
ODX_API void odx_trajectory_free(odx_trajectory* trajectory);

ODX_API odx_status odx_graph_build_geometric(const odx_trajectory* t1, const odx_trajectory* t2,
                                             const odx_geometry_params* params, odx_graph** out);

ODX_API odx_status odx_scores_load(const char* path, odx_scores** out);
ODX_API void odx_scores_free(odx_scores* scores);
/* Vertex weights are feature_count * descriptor_bytes. */
ODX_API odx_status odx_graph_build_appearance(const odx_scores* scores, const uint64_t* features1, size_t n1,
                                              const uint64_t* features2, size_t n2, uint64_t descriptor_bytes,
                                              const odx_appearance_params* params, odx_graph** out);
ODX_API odx_status odx_feature_counts_load(const char* path, uint64_t** counts, size_t* count);
ODX_API void odx_feature_counts_free(uint64_t* counts);

/* ---- policies ------------------------------------------------------------ */

ODX_API odx_status odx_policy_monolog(const odx_graph* graph, int side, odx_policy** out);
ODX_API odx_status odx_policy_load(const odx_graph* graph, const char* path, odx_policy** out);
ODX_API odx_status odx_policy_save(const odx_graph* graph, const odx_policy* policy, const char* path);
ODX_API odx_status odx_policy_to_json(const odx_graph* graph, const odx_policy* policy, char** out);
ODX_API odx_policy* odx_policy_clone(const odx_policy* policy);
ODX_API void odx_policy_free(odx_policy* policy);
ODX_API odx_status odx_policy_is_admissible(const odx_graph* graph, const odx_policy* policy, int* out);
ODX_API odx_status odx_policy_comm_cost(const odx_graph* graph, const odx_policy* policy, char** out);
ODX_API odx_status odx_policy_objective_cost(const odx_graph* graph, const odx_policy* policy,
                                             const odx_objective* objective, char** out);
/* Workload summary as JSON: {"ell1", "ell2", "balance", "l1", "l2", "l12"}. */
ODX_API odx_status odx_policy_workloads(const odx_graph* graph, const odx_policy* policy,
                                        const odx_objective* objective, char** out);

/* ---- solving and certificates -------------------------------------------- */

ODX_API odx_status odx_solve(const odx_graph* graph, const odx_objective* objective, odx_solve_result** out);
ODX_API odx_status odx_solve_uniform_matching(const odx_graph* graph, const odx_objective* objective,
                                              odx_solve_result** out);
ODX_API odx_status odx_solve_brute_force(const odx_graph* graph, const odx_objective* objective,
                                         odx_solve_result** out);
ODX_API odx_status odx_p1_closed_form(const odx_graph* graph, const char* alpha1, const char* alpha2,
                                      odx_solve_result** out);
ODX_API void odx_solve_result_free(odx_solve_result* result);
ODX_API const odx_policy* odx_solve_result_policy(const odx_solve_result* result);
ODX_API const char* odx_solve_result_cost(const odx_solve_result* result);
ODX_API const char* odx_solve_result_certificate(const odx_solve_result* result);
ODX_API const char* odx_solve_result_method(const odx_solve_result* result);

ODX_API odx_status odx_check_ghc(const odx_graph* graph, const odx_objective* objective, int side,
                                 odx_ghc_certificate** out);
ODX_API void odx_ghc_free(odx_ghc_certificate* certificate);
ODX_API int odx_ghc_holds(const odx_ghc_certificate* certificate);
ODX_API const odx_policy* odx_ghc_improving_policy(const odx_ghc_certificate* certificate);
/* Full certificate as JSON. */
ODX_API odx_status odx_ghc_to_json(const odx_graph* graph, const odx_ghc_certificate* certificate, char** out);
ODX_API odx_status odx_check_hall_uniform(const odx_graph* graph, const odx_objective* objective, int side,
                                          int* out);

/* ---- rendezvous simulation ------------------------------------------------ */

ODX_API odx_status odx_rendezvous_config_create(const odx_objective* objective, odx_rendezvous_config** out);
ODX_API void odx_rendezvous_config_free(odx_rendezvous_config* config);
/* Ground truth given as "u v" lines of vertex indices. */
ODX_API odx_status odx_rendezvous_config_set_ground_truth(odx_rendezvous_config* config, const odx_graph* graph,
                                                          const char* text);
ODX_API odx_status odx_rendezvous_config_set_channel_alive(odx_rendezvous_config* config, int alive);
ODX_API odx_status odx_rendezvous_config_set_broker(odx_rendezvous_config* config, odx_broker_placement placement);
ODX_API odx_status odx_rendezvous_config_set_closure_bytes(odx_rendezvous_config* config, uint64_t bytes);
/* NULL restores the default (3 bytes per 32-byte descriptor). */
ODX_API odx_status odx_rendezvous_config_set_metadata_bytes(odx_rendezvous_config* config, const char* bytes);

/* policy may be NULL, in which case the broker solves for the optimum. */
ODX_API odx_status odx_rendezvous_run(const odx_graph* graph, const odx_rendezvous_config* config,
                                      const odx_policy* policy, odx_trace** out);
ODX_API void odx_trace_free(odx_trace* trace);
ODX_API odx_status odx_trace_log(const odx_graph* graph, const odx_trace* trace, char** out);
/* {"metadata_bytes", "scan_bytes", "closure_bytes", "ell1", "ell2",
 *  "discovered1", "discovered2", "undelivered1", "undelivered2"} */
ODX_API odx_status odx_trace_summary_json(const odx_graph* graph, const odx_trace* trace, char** out);
ODX_API odx_status odx_compare_strategies_csv(const odx_graph* graph, const odx_rendezvous_config* config,
                                              char** out);

/* ---- sweeps ---------------------------------------------------------------- */

/* from/to/step are exact numeric strings. `report` (may be NULL) receives a
 * one-line nesting verdict; `nested` (may be NULL) receives 1 or 0. */
ODX_API odx_status odx_sweep_geometric(const odx_trajectory* t1, const odx_trajectory* t2,
                                       const odx_geometry_params* base, const odx_objective* objective,
                                       odx_sweep_parameter parameter, const char* from, const char* to,
                                       const char* step, int gnuplot, char** csv, char** report, int* nested);
ODX_API odx_status odx_sweep_appearance(const odx_scores* scores, const uint64_t* features1, size_t n1,
                                        const uint64_t* features2, size_t n2, uint64_t descriptor_bytes,
                                        const odx_appearance_params* base, const odx_objective* objective,
                                        const char* from, const char* to, const char* step, int gnuplot,
                                        char** csv, char** report, int* nested);
ODX_API odx_status odx_sweep_omega(const odx_graph* graph, const odx_objective* objective, const char* from,
                                   const char* to, const char* step, int gnuplot, char** csv, char** report,
                                   int* nested);

#ifdef __cplusplus
}
#endif

#endif /* ODX_ODX_H_ */
