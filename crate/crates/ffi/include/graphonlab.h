#ifndef GRAPHONLAB_H
#define GRAPHONLAB_H

/* Generated by cbindgen from graphonlab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum GlStatus {
  GL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GL_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  GL_STATUS_INVALID_UTF8 = 2,
  GL_STATUS_IO = 3,
  GL_STATUS_PARSE = 4,
  /**
   * Precondition violation on operation inputs.
   */
  GL_STATUS_INVALID = 5,
  /**
   * Exact mode requested beyond its size guard.
   */
  GL_STATUS_SIZE_GUARD = 6,
  GL_STATUS_UNKNOWN_ID = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  GL_STATUS_PANIC = 8,
} GlStatus;

/**
 * k-colored digraph handle.
 */
typedef struct GlColoredDigraph GlColoredDigraph;

/**
 * k-digraphon handle.
 */
typedef struct GlDigraphon GlDigraphon;

/**
 * Fractional coloring handle.
 */
typedef struct GlFractional GlFractional;

/**
 * Undirected simple graph handle.
 */
typedef struct GlGraph GlGraph;

/**
 * Step-kernel handle.
 */
typedef struct GlKernel GlKernel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *gl_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gl_version(void);

/**
 * Loads a graph from its text format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_graph_load(const char *path, struct GlGraph **out);

/**
 * Writes a graph in its text format.
 *
 * # Safety
 * `handle` must be a live handle; `path` a NUL-terminated string.
 */
enum GlStatus gl_graph_save(const struct GlGraph *handle, const char *path);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be used afterwards.
 */
void gl_graph_free(struct GlGraph *handle);

/**
 * Loads a step kernel from its text format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_kernel_load(const char *path, struct GlKernel **out);

/**
 * Writes a step kernel in its text format (equal partitions only).
 *
 * # Safety
 * `handle` must be a live handle; `path` a NUL-terminated string.
 */
enum GlStatus gl_kernel_save(const struct GlKernel *handle, const char *path);

/**
 * Releases a kernel handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be used afterwards.
 */
void gl_kernel_free(struct GlKernel *handle);

/**
 * Loads a k-digraphon from its text format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_digraphon_load(const char *path, struct GlDigraphon **out);

/**
 * Writes a k-digraphon in its text format.
 *
 * # Safety
 * `handle` must be a live handle; `path` a NUL-terminated string.
 */
enum GlStatus gl_digraphon_save(const struct GlDigraphon *handle, const char *path);

/**
 * Releases a digraphon handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be used afterwards.
 */
void gl_digraphon_free(struct GlDigraphon *handle);

/**
 * Loads a k-colored digraph from its text format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_colored_load(const char *path, struct GlColoredDigraph **out);

/**
 * Writes a k-colored digraph in its text format.
 *
 * # Safety
 * `handle` must be a live handle; `path` a NUL-terminated string.
 */
enum GlStatus gl_colored_save(const struct GlColoredDigraph *handle, const char *path);

/**
 * Releases a colored-digraph handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be used afterwards.
 */
void gl_colored_free(struct GlColoredDigraph *handle);

/**
 * Loads a fractional coloring from its text format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GlStatus gl_fractional_load(const char *path, struct GlFractional **out);

/**
 * Writes a fractional coloring in its text format.
 *
 * # Safety
 * `handle` must be a live handle; `path` a NUL-terminated string.
 */
enum GlStatus gl_fractional_save(const struct GlFractional *handle, const char *path);

/**
 * Releases a fractional-coloring handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and not be used afterwards.
 */
void gl_fractional_free(struct GlFractional *handle);

/**
 * Builds a graph from a flat array of 0-based endpoint pairs
 * `[u0, v0, u1, v1, ...]`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable u32 values (may be null
 * when `edge_count` is 0); `out` must be valid.
 */
enum GlStatus gl_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct GlGraph **out);

/**
 * Node count of a graph handle.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
size_t gl_graph_node_count(const struct GlGraph *g);

/**
 * Edge count of a graph handle.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
size_t gl_graph_edge_count(const struct GlGraph *g);

/**
 * Adjacency query; false for out-of-range ids or a null handle.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
bool gl_graph_has_edge(const struct GlGraph *g, size_t u, size_t v);

/**
 * 0/1 step kernel of a graph.
 *
 * # Safety
 * `g` must be a live graph handle, `out` a valid pointer.
 */
enum GlStatus gl_kernel_of_graph(const struct GlGraph *g, struct GlKernel **out);

/**
 * Cut norm of a step kernel. Exact mode enumerates subsets and is guarded;
 * otherwise a multi-start local search reports a lower bound with
 * `*out_exact = false`.
 *
 * # Safety
 * `k` must be a live kernel handle; out pointers valid.
 */
enum GlStatus gl_kernel_cut_norm(const struct GlKernel *k,
                                 bool exact,
                                 double *out_value,
                                 bool *out_exact);

/**
 * Labeled cut distance of two graphs on the same node set.
 *
 * # Safety
 * Both handles must be live; out pointers valid.
 */
enum GlStatus gl_cut_distance_graphs(const struct GlGraph *a,
                                     const struct GlGraph *b,
                                     double *out_value,
                                     bool *out_exact);

/**
 * Edit distance |E Δ E'| / n² of two graphs on the same node set.
 *
 * # Safety
 * Both handles must be live; `out_value` valid.
 */
enum GlStatus gl_edit_distance_graphs(const struct GlGraph *a,
                                      const struct GlGraph *b,
                                      double *out_value);

/**
 * Cut distance of two fractional colorings on the same node set.
 *
 * # Safety
 * Both handles must be live; out pointers valid.
 */
enum GlStatus gl_cut_distance_fractional(const struct GlFractional *a,
                                         const struct GlFractional *b,
                                         double *out_value,
                                         bool *out_exact);

/**
 * Shadow of a colored digraph: edges whose pair carries a color <= m in
 * either direction.
 *
 * # Safety
 * `l` must be a live handle; `out` valid.
 */
enum GlStatus gl_shadow(const struct GlColoredDigraph *l, uint8_t m, struct GlGraph **out);

/**
 * Whether both directions of every pair agree about being <= m.
 *
 * # Safety
 * `l` must be a live handle; `out` valid.
 */
enum GlStatus gl_is_consistent_coloring(const struct GlColoredDigraph *l, uint8_t m, bool *out);

/**
 * Pulls a k-digraphon's coloring back onto a graph; `out_degenerate`
 * counts cells where the uniform fallback replaced a vanishing
 * denominator.
 *
 * # Safety
 * Handles must be live; out pointers valid.
 */
enum GlStatus gl_pullback_coloring(const struct GlGraph *f,
                                   const struct GlDigraphon *w,
                                   uint8_t m,
                                   struct GlFractional **out,
                                   size_t *out_degenerate);

/**
 * Randomized rounding of a fractional coloring (independent per ordered
 * pair) under the given seed/stream.
 *
 * # Safety
 * `h` must be a live handle; `out` valid.
 */
enum GlStatus gl_round_coloring(const struct GlFractional *h,
                                uint64_t master_seed,
                                uint64_t stream,
                                struct GlColoredDigraph **out);

/**
 * Uniform random induced subgraph on r nodes.
 *
 * # Safety
 * `g` must be a live handle; `out` valid.
 */
enum GlStatus gl_sample_induced(const struct GlGraph *g,
                                size_t r,
                                uint64_t master_seed,
                                uint64_t stream,
                                struct GlGraph **out);

/**
 * W-random graph from a symmetric step kernel with values in the unit interval.
 *
 * # Safety
 * `u` must be a live handle; `out` valid.
 */
enum GlStatus gl_sample_graph_from_graphon(const struct GlKernel *u,
                                           size_t n,
                                           uint64_t master_seed,
                                           uint64_t stream,
                                           struct GlGraph **out);

/**
 * r-node colored digraph sampled from a k-digraphon.
 *
 * # Safety
 * `w` must be a live handle; `out` valid.
 */
enum GlStatus gl_sample_from_digraphon(const struct GlDigraphon *w,
                                       size_t r,
                                       uint64_t master_seed,
                                       uint64_t stream,
                                       struct GlColoredDigraph **out);

/**
 * Max-cut density (cut edges / n²). Exact mode is guarded; otherwise the
 * local-search lower bound is reported with `*out_exact = false`.
 *
 * # Safety
 * `g` must be a live handle; out pointers valid.
 */
enum GlStatus gl_maxcut_density(const struct GlGraph *g,
                                bool exact,
                                double *out_value,
                                bool *out_exact);

/**
 * Acceptance frequency of the max-cut tester (threshold c, sample size r)
 * over `trials` seeded samples.
 *
 * # Safety
 * `g` must be a live handle; `out_acceptance` valid.
 */
enum GlStatus gl_tester_acceptance(const struct GlGraph *g,
                                   double c,
                                   size_t r,
                                   size_t trials,
                                   uint64_t master_seed,
                                   uint64_t stream,
                                   double *out_acceptance);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHONLAB_H */
