/* Directed low-diameter decompositions: C interface. */
#ifndef LDD_LDD_H
#define LDD_LDD_H

#include <stddef.h>
#include <stdint.h>

#if defined(LDD_BUILDING_LIBRARY)
#define LDD_API __attribute__((visibility("default")))
#else
#define LDD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ldd_status {
  LDD_OK = 0,
  LDD_ERR_INVALID_ARGUMENT = 1,
  LDD_ERR_PARSE = 2,
  LDD_ERR_IO = 3,
  LDD_ERR_BUDGET = 4,
  LDD_ERR_INTERNAL = 5
} ldd_status;

typedef enum ldd_algo { LDD_ALGO_DET = 0, LDD_ALGO_FAST = 1 } ldd_algo;

typedef struct ldd_graph ldd_graph;
typedef struct ldd_support ldd_support;
typedef struct ldd_cut ldd_cut;

/* Message for the last failing call on this thread ("" if none). */
LDD_API const char* ldd_last_error(void);
LDD_API const char* ldd_status_string(ldd_status s);
LDD_API const char* ldd_version(void);

/* Strings returned through char** are owned by the caller. */
LDD_API void ldd_free_string(char* s);

/* ---- graphs ---- */

LDD_API ldd_status ldd_graph_create(uint32_t n, uint32_t m, const uint32_t* src, const uint32_t* dst,
                                    const int64_t* len, ldd_graph** out);
LDD_API ldd_status ldd_graph_read(const char* path, ldd_graph** out);
LDD_API ldd_status ldd_graph_parse(const char* text, ldd_graph** out);
LDD_API ldd_status ldd_graph_write(const ldd_graph* g, const char* path);
LDD_API ldd_status ldd_graph_to_string(const ldd_graph* g, char** out);
/* family: "cycles:k:len", "bidirected_random:n:p", "dag_random:n:p",
   "grid_torus:w:h", "weighted_random:n:m:max_len". */
LDD_API ldd_status ldd_graph_generate(const char* family, uint64_t seed, ldd_graph** out);
LDD_API void ldd_graph_free(ldd_graph* g);

LDD_API uint32_t ldd_graph_node_count(const ldd_graph* g);
LDD_API uint32_t ldd_graph_edge_count(const ldd_graph* g);
LDD_API ldd_status ldd_graph_edge(const ldd_graph* g, uint32_t e, uint32_t* src, uint32_t* dst, int64_t* len);

/* ---- deterministic construction ---- */

typedef struct ldd_det_options {
  double c_psi;
  double gamma;
  uint64_t subdivision_budget;
} ldd_det_options;

LDD_API ldd_det_options ldd_det_options_default(void);
/* opt may be NULL. */
LDD_API ldd_status ldd_det_run(const ldd_graph* g, int64_t d, const ldd_det_options* opt, ldd_support** out);
LDD_API ldd_status ldd_support_read_json(const char* path, ldd_support** out);
LDD_API ldd_status ldd_support_write_json(const ldd_support* s, const char* path);
LDD_API ldd_status ldd_support_to_json(const ldd_support* s, char** out);
LDD_API void ldd_support_free(ldd_support* s);

LDD_API int64_t ldd_support_d(const ldd_support* s);
LDD_API size_t ldd_support_rounds(const ldd_support* s);
LDD_API size_t ldd_support_cut_size(const ldd_support* s, size_t round);
/* Sorted edge ids of one support set; valid until ldd_support_free. */
LDD_API const uint32_t* ldd_support_cut_edges(const ldd_support* s, size_t round);
LDD_API size_t ldd_support_force_cut_size(const ldd_support* s);
LDD_API const uint32_t* ldd_support_force_cut(const ldd_support* s);
LDD_API uint64_t ldd_support_psi_doublings(const ldd_support* s);

/* ---- randomized construction ---- */

LDD_API ldd_status ldd_fast_run(const ldd_graph* g, int64_t d, uint64_t seed, ldd_cut** out);
LDD_API ldd_status ldd_cut_read_json(const char* path, ldd_cut** out);
/* include_timing != 0 adds wall_time_ms. */
LDD_API ldd_status ldd_cut_write_json(const ldd_cut* c, const char* path, int include_timing);
LDD_API ldd_status ldd_cut_to_json(const ldd_cut* c, int include_timing, char** out);
LDD_API void ldd_cut_free(ldd_cut* c);

LDD_API size_t ldd_cut_size(const ldd_cut* c);
LDD_API const uint32_t* ldd_cut_edges(const ldd_cut* c);
LDD_API uint64_t ldd_cut_restarts(const ldd_cut* c);
LDD_API uint32_t ldd_cut_max_depth(const ldd_cut* c);
LDD_API double ldd_cut_wall_time_ms(const ldd_cut* c);

/* ---- verification ---- */

typedef struct ldd_validity {
  int valid;
  /* first offending pair when !valid; distance INT64_MAX if unreachable */
  uint32_t u, v;
  int64_t distance;
  uint32_t components;
} ldd_validity;

LDD_API ldd_status ldd_verify_cut(const ldd_graph* g, const ldd_cut* c, int64_t d, ldd_validity* out);
/* Checks every support set; reports the first failing one in *failed_round. */
LDD_API ldd_status ldd_verify_support(const ldd_graph* g, const ldd_support* s, int64_t d, ldd_validity* out,
                                      size_t* failed_round);

typedef struct ldd_loss_summary {
  int valid;
  uint64_t invalid_samples;
  double measured_loss;
  double measured_loss_upper;
} ldd_loss_summary;

/* CSV header: edge_id,freq,upper_ci,len,normalized_loss. threads 0 = default. */
LDD_API ldd_status ldd_loss(const ldd_graph* g, int64_t d, ldd_algo algo, uint64_t samples, uint64_t seed,
                            unsigned threads, char** csv, ldd_loss_summary* summary);

/* ---- experiments ---- */

LDD_API ldd_status ldd_experiment(const char* config_text, unsigned threads, char** csv, int* any_invalid);

#ifdef __cplusplus
}
#endif

#endif
