/* C interface to the ultrametric toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Strings returned through char** out-parameters
 * are heap allocated and released with um_string_free. Every function
 * returns a status code; on failure um_last_error() describes the problem
 * (the message is per thread and valid until the next call on that thread).
 *
 * Rationals cross the boundary as canonical decimal strings ("3", "-1/2").
 * Boolean results are written as 0 or 1 into int out-parameters.
 */
#ifndef ULTRA_ULTRA_H_
#define ULTRA_ULTRA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ULTRA_BUILDING_LIBRARY)
#define UM_API __attribute__((visibility("default")))
#else
#define UM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum um_status {
  UM_OK = 0,
  UM_ERR_INPUT = 1,        /* malformed or invalid input data */
  UM_ERR_PRECONDITION = 2, /* valid data outside an operation's domain */
  UM_ERR_LIMIT = 3,        /* exhaustive search refused an oversized input */
  UM_ERR_UNKNOWN_PROPERTY = 4,
  UM_ERR_NULL = 5,         /* a required pointer argument was NULL */
  UM_ERR_INTERNAL = 6
} um_status;

typedef struct um_space um_space;
typedef struct um_quasi_order um_quasi_order;
typedef struct um_multiset um_multiset;
typedef struct um_tree um_tree;
typedef struct um_graph um_graph;

UM_API const char* um_last_error(void);
UM_API const char* um_status_name(um_status status);
UM_API void um_string_free(char* s);

/* ---- Spaces -------------------------------------------------------------- */

/* Parses the space file format. Matrices must satisfy the metric axioms. */
UM_API um_status um_space_parse(const char* json, um_space** out);
UM_API void um_space_free(um_space* space);
UM_API void um_space_array_free(um_space** spaces, size_t count);

/* Validation report of a candidate matrix (metric axioms need not hold).
 * is_ultrametric may be NULL. */
UM_API um_status um_space_check(const char* json, char** report_json, int* is_ultrametric);

UM_API um_status um_space_size(const um_space* space, size_t* out);
UM_API um_status um_space_is_ultrametric(const um_space* space, int* out);
/* Ball-tree form for ultrametrics, matrix form otherwise. */
UM_API um_status um_space_to_json(const um_space* space, char** out);
UM_API um_status um_space_matrix_json(const um_space* space, char** out);
UM_API um_status um_space_distances_json(const um_space* space, char** out);

/* The following three require ultrametric spaces. */
UM_API um_status um_space_canonical_code(const um_space* space, char** hex);
UM_API um_status um_space_isometric(const um_space* a, const um_space* b, int* out);
UM_API um_status um_space_embeds(const um_space* a, const um_space* b, int* out);

/* Exhaustive searches for any metric; bound 0 selects the default (8). */
UM_API um_status um_space_brute_isometric(const um_space* a, const um_space* b, size_t bound,
                                          int* out);
UM_API um_status um_space_brute_embeds(const um_space* a, const um_space* b, size_t bound,
                                       int* out);

/* ---- Quasi-orders and omega-multisets ------------------------------------ */

UM_API um_status um_qo_parse(const char* json, um_quasi_order** out);
UM_API void um_qo_free(um_quasi_order* s);
UM_API um_status um_qo_to_json(const um_quasi_order* s, char** out);
/* JSON array of equivalence classes, each sorted, ordered by least member. */
UM_API um_status um_qo_classes(const um_quasi_order* s, char** out);
/* Least incomparable pair, if any; x and y are left untouched otherwise. */
UM_API um_status um_qo_incomparable(const um_quasi_order* s, int* found, size_t* x, size_t* y);

UM_API um_status um_multiset_parse(const um_quasi_order* base, const char* json,
                                   um_multiset** out);
UM_API void um_multiset_free(um_multiset* m);
UM_API um_status um_multiset_to_json(const um_multiset* m, char** out);

typedef enum um_inj_method { UM_INJ_FLOW = 0, UM_INJ_WQO = 1, UM_INJ_EQUIV = 2 } um_inj_method;
typedef enum um_einj_method { UM_EINJ_CHAR = 0, UM_EINJ_FLOW = 1 } um_einj_method;

UM_API um_status um_cf_le(const um_multiset* a, const um_multiset* b, int* out);
/* witness_json may be NULL; when given and the comparison holds under the
 * flow method, receives the witness, otherwise NULL. */
UM_API um_status um_inj_le(const um_multiset* a, const um_multiset* b, um_inj_method method,
                           int* out, char** witness_json);
/* With paranoid set, both methods run and a disagreement is reported as
 * UM_ERR_INTERNAL. */
UM_API um_status um_einj(const um_multiset* a, const um_multiset* b, um_einj_method method,
                         int paranoid, int* out);
UM_API um_status um_iterate(const um_multiset* a, char** trace_json);
/* Level-respecting witness for a <= b; *found is 0 when none exists. */
UM_API um_status um_level_witness(const um_multiset* a, const um_multiset* b, int* found,
                                  char** witness_json);

/* ---- Trees and graphs ---------------------------------------------------- */

UM_API um_status um_tree_parse(const char* json, um_tree** out);
UM_API void um_tree_free(um_tree* t);
UM_API um_status um_tree_to_json(const um_tree* t, char** out);
UM_API um_status um_tree_iso(const um_tree* g, const um_tree* h, int* out);
UM_API um_status um_tree_embeds(const um_tree* g, const um_tree* h, int* out);

UM_API um_status um_graph_parse(const char* json, um_graph** out);
UM_API void um_graph_free(um_graph* g);
UM_API um_status um_graph_to_json(const um_graph* g, char** out);

/* ---- Reductions ---------------------------------------------------------- */

UM_API um_status um_reduce_theta(const um_tree* t, const char* const* r, size_t r_count,
                                 um_space** out);
UM_API um_status um_reduce_glue(const um_space* u, const char* const* d, size_t d_count,
                                const char* rbar, um_space** out);
UM_API um_status um_reduce_tail(const um_space* x, const char* const* d, size_t d_count,
                                um_space** out);
UM_API um_status um_reduce_phi(const um_space* const* xs, size_t count, const char* r,
                               um_space** out);
/* *out receives an array of *out_count spaces; free with um_space_array_free. */
UM_API um_status um_reduce_decompose(const um_space* x, const char* const* d, size_t d_count,
                                     um_space*** out, size_t* out_count);
UM_API um_status um_reduce_rank(const um_tree* t, const char* const* r, size_t r_count,
                                um_space** out);
UM_API um_status um_reduce_graph(const um_graph* g, const char* r, const char* rp,
                                 um_space** out);
UM_API um_status um_reduce_powerset(const char* const* x, size_t count, um_space** out);

UM_API um_status um_list_inj(const um_space* const* xs, size_t x_count,
                             const um_space* const* ys, size_t y_count, int* out);
UM_API um_status um_list_bij_isometric(const um_space* const* xs, size_t x_count,
                                       const um_space* const* ys, size_t y_count, int* out);

/* ---- Verification campaigns ---------------------------------------------- */

/* Zero fields select each property's own default. */
typedef struct um_bounds {
  size_t max_nodes;
  size_t max_points;
  size_t max_support;
} um_bounds;

/* JSON array of registered property names. */
UM_API um_status um_property_names(char** out);
/* Runs a campaign; bounds may be NULL. The report omits elapsed time unless
 * with_timing is set. */
UM_API um_status um_verify(const char* property, uint64_t trials, uint64_t seed,
                           const um_bounds* bounds, unsigned threads, int with_timing,
                           char** report_json, int* passed);
/* Re-runs one trial from the trial_seed recorded in a report. */
UM_API um_status um_replay(const char* property, uint64_t trial_seed, const um_bounds* bounds,
                           char** result_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* ULTRA_ULTRA_H_ */
