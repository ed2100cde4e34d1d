#ifndef EBFS_H
#define EBFS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EbfsMode {
  EBFS_MODE_EXHAUSTIVE = 0,
  EBFS_MODE_GREEDY = 1,
} EbfsMode;

typedef enum EbfsStatus {
  EBFS_STATUS_OK = 0,
  EBFS_STATUS_NULL_POINTER = 1,
  EBFS_STATUS_INVALID_ARGUMENT = 2,
  EBFS_STATUS_PARSE = 3,
  EBFS_STATUS_VALIDATION = 4,
  EBFS_STATUS_GREEDY_VIOLATION = 5,
  EBFS_STATUS_NO_OPTIMUM = 6,
  EBFS_STATUS_BUFFER_TOO_SMALL = 7,
  EBFS_STATUS_PANIC = 8,
} EbfsStatus;

typedef enum EbfsProblem {
  EBFS_PROBLEM_SPSP = 0,
  EBFS_PROBLEM_SSSP = 1,
  EBFS_PROBLEM_MST_PRIM = 2,
  EBFS_PROBLEM_MST_KRUSKAL = 3,
} EbfsProblem;

typedef struct EbfsGraph EbfsGraph;

typedef struct EbfsKnapsack EbfsKnapsack;

typedef struct EbfsResult EbfsResult;

typedef struct EbfsOptions {
  enum EbfsMode mode;
  // Rerun exhaustively instead of failing when greedy mode keeps more
  // than one space at a level.
  bool greedy_fallback;
  // 0 runs on the calling thread.
  uint32_t threads;
} EbfsOptions;

typedef struct EbfsStats {
  uint64_t levels;
  uint64_t generated;
  uint64_t duplicates_removed;
  uint64_t equivalence_merged;
  uint64_t dominated_pruned;
  uint64_t retained;
  uint64_t locals_found;
  uint64_t greedy_fallbacks;
  uint64_t max_undominated_width;
} EbfsStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Options matching the CLI defaults: exhaustive, no fallback, one thread.
struct EbfsOptions ebfs_options_default(void);

// Message for the last failing call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *ebfs_last_error(void);

// Static name of a status code, such as `"parse"`.
const char *ebfs_status_name(enum EbfsStatus status);

// Parses the edge-list text format.
//
// # Safety
// `input` must be a NUL-terminated string and `out` writable.
enum EbfsStatus ebfs_graph_parse(const char *input, struct EbfsGraph **out);

// Builds a graph from parallel arrays of `edges` endpoints and weights.
//
// # Safety
// Each array must hold `edges` elements and `out` must be writable.
enum EbfsStatus ebfs_graph_from_edges(size_t nodes,
                                      const size_t *from,
                                      const size_t *to,
                                      const uint64_t *weight,
                                      size_t edges,
                                      struct EbfsGraph **out);

// # Safety
// `graph` must be null or a live graph handle.
size_t ebfs_graph_node_count(const struct EbfsGraph *graph);

// # Safety
// `graph` must be null or a live graph handle.
size_t ebfs_graph_edge_count(const struct EbfsGraph *graph);

// # Safety
// `graph` must be null or a handle not yet freed.
void ebfs_graph_free(struct EbfsGraph *graph);

// Parses the knapsack text format.
//
// # Safety
// `input` must be a NUL-terminated string and `out` writable.
enum EbfsStatus ebfs_knapsack_parse(const char *input, struct EbfsKnapsack **out);

// # Safety
// Both arrays must hold `items` elements and `out` must be writable.
enum EbfsStatus ebfs_knapsack_from_items(uint64_t capacity,
                                         const uint64_t *weight,
                                         const uint64_t *utility,
                                         size_t items,
                                         struct EbfsKnapsack **out);

// # Safety
// `knapsack` must be null or a handle not yet freed.
void ebfs_knapsack_free(struct EbfsKnapsack *knapsack);

// Solves a graph problem. `source` is ignored for Kruskal and `target`
// is read only for single-pair shortest path. `options` may be null.
//
// # Safety
// `graph` must be a live handle, `options` null or valid, `out` writable.
enum EbfsStatus ebfs_solve_graph(const struct EbfsGraph *graph,
                                 enum EbfsProblem problem,
                                 size_t source,
                                 size_t target,
                                 const struct EbfsOptions *options,
                                 struct EbfsResult **out);

// # Safety
// `knapsack` must be a live handle, `options` null or valid, `out` writable.
enum EbfsStatus ebfs_solve_knapsack(const struct EbfsKnapsack *knapsack,
                                    const struct EbfsOptions *options,
                                    struct EbfsResult **out);

// # Safety
// `result` must be null or a live result handle.
bool ebfs_result_has_optimum(const struct EbfsResult *result);

// Writes the optimal cost, or returns `NoOptimum` when nothing feasible
// was found.
//
// # Safety
// `result` must be a live handle and `cost` writable.
enum EbfsStatus ebfs_result_cost(const struct EbfsResult *result, uint64_t *cost);

// # Safety
// `result` must be null or a live result handle.
size_t ebfs_result_optima_count(const struct EbfsResult *result);

// Copies optimum `index` (edge ids, or item ids for knapsack) into
// `buffer`. `len` always receives the full length, so a call with
// `capacity` 0 sizes the buffer; `BufferTooSmall` means nothing was
// copied.
//
// # Safety
// `result` must be a live handle, `buffer` must hold `capacity` elements
// and `len` must be writable.
enum EbfsStatus ebfs_result_optimum(const struct EbfsResult *result,
                                    size_t index,
                                    size_t *buffer,
                                    size_t capacity,
                                    size_t *len);

// # Safety
// `result` must be a live handle and `stats` writable.
enum EbfsStatus ebfs_result_stats(const struct EbfsResult *result, struct EbfsStats *stats);

// Result as a JSON object with `optimal_cost`, `optima` and `stats`.
// Release the string with [`ebfs_string_free`]. Null on failure.
//
// # Safety
// `result` must be null or a live result handle.
char *ebfs_result_json(const struct EbfsResult *result);

// # Safety
// `result` must be null or a handle not yet freed.
void ebfs_result_free(struct EbfsResult *result);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ebfs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EBFS_H */
