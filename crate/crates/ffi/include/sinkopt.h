#ifndef SINKOPT_H
#define SINKOPT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SINKOPT_STATUS_OK = 0,
  SINKOPT_STATUS_NULL_POINTER = 1,
  SINKOPT_STATUS_INVALID_UTF8 = 2,
  SINKOPT_STATUS_PARSE_ERROR = 3,
  SINKOPT_STATUS_INVALID_GRAPH = 4,
  SINKOPT_STATUS_INVALID_ARGUMENT = 5,
  SINKOPT_STATUS_SOLVER_FAILURE = 6,
  SINKOPT_STATUS_TOO_LARGE = 7,
  SINKOPT_STATUS_BUFFER_TOO_SMALL = 8,
  SINKOPT_STATUS_PANIC = 9,
} SinkoptStatus;

/*
 Opaque parsed graph.
 */
typedef struct SinkoptGraph SinkoptGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a NUL-terminated edge list into a new graph handle.

 # Safety
 `text` must be a valid C string and `out` a valid pointer.
 */
SinkoptStatus sinkopt_graph_parse(const char *text, SinkoptGraph **out);

/*
 Releases a graph handle. Null is ignored.

 # Safety
 `g` must come from [`sinkopt_graph_parse`] and not be used afterwards.
 */
void sinkopt_graph_free(SinkoptGraph *g);

/*
 Number of nodes, 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t sinkopt_graph_node_count(const SinkoptGraph *g);

/*
 Number of edges, 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t sinkopt_graph_edge_count(const SinkoptGraph *g);

/*
 Copies node labels in ascending order into `out[0..cap]`.

 # Safety
 `out` must have room for `cap` values.
 */
SinkoptStatus sinkopt_graph_labels(const SinkoptGraph *g, uint64_t *out, size_t cap);

/*
 Total expected hitting time `F` of the labelled set.

 # Safety
 `labels` must point to `len` values and `out` must be valid.
 */
SinkoptStatus sinkopt_objective(const SinkoptGraph *g,
                                const uint64_t *labels,
                                size_t len,
                                double *out);

/*
 Hitting times from every node, in ascending label order; nodes in the
 target get 0. `out` needs one slot per node.

 # Safety
 `labels` must point to `len` values and `out` to `cap` slots.
 */
SinkoptStatus sinkopt_hitting_times(const SinkoptGraph *g,
                                    const uint64_t *labels,
                                    size_t len,
                                    double *out,
                                    size_t cap);

/*
 Vertex cover from a greedy maximal matching.

 # Safety
 `out` must have room for `cap` labels; `out_len` must be valid.
 */
SinkoptStatus sinkopt_vertex_cover(const SinkoptGraph *g,
                                   uint64_t *out,
                                   size_t cap,
                                   size_t *out_len);

/*
 Classic greedy selection of `k` nodes.

 # Safety
 `out` must have room for `cap >= k` labels; `out_f` may be null.
 */
SinkoptStatus sinkopt_greedy(const SinkoptGraph *g,
                             size_t k,
                             uint64_t *out,
                             size_t cap,
                             double *out_f);

/*
 Exhaustive optimum over all `k`-node sets.

 # Safety
 As for [`sinkopt_greedy`].
 */
SinkoptStatus sinkopt_oracle(const SinkoptGraph *g,
                             size_t k,
                             uint64_t *out,
                             size_t cap,
                             double *out_f);

/*
 Starter-set method with threshold `nu`, starters drawn from subsets of
 the matching cover.

 # Safety
 As for [`sinkopt_greedy`].
 */
SinkoptStatus sinkopt_solve(const SinkoptGraph *g,
                            size_t k,
                            double nu,
                            uint64_t *out,
                            size_t cap,
                            double *out_f);

/*
 Runs the command-line interface on `argv[0..argc]` (program name first).
 Output strings must be released with [`sinkopt_string_free`].

 # Safety
 `argv` must hold `argc` valid C strings; the out pointers must be valid.
 */
SinkoptStatus sinkopt_dispatch_json(const char *const *argv,
                                    size_t argc,
                                    char **out_stdout,
                                    char **out_stderr,
                                    int *exit_code);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void sinkopt_string_free(char *s);

/*
 Message of the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *sinkopt_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINKOPT_H */
