#ifndef ODDCYCLE_H
#define ODDCYCLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OcFormat {
  OC_FORMAT_EDGELIST = 0,
  OC_FORMAT_GRAPH6 = 1,
} OcFormat;

typedef enum OcStatus {
  OC_STATUS_OK = 0,
  OC_STATUS_NULL_POINTER = 1,
  OC_STATUS_INVALID_UTF8 = 2,
  OC_STATUS_PARSE = 3,
  OC_STATUS_NOT_IN_CLASS = 4,
  OC_STATUS_PRECONDITION = 5,
  OC_STATUS_SIZE_CAP = 6,
  OC_STATUS_INTERNAL = 7,
  OC_STATUS_PANIC = 8,
} OcStatus;

// Opaque graph handle.
typedef struct OcGraph OcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *oc_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void oc_string_free(char *s);

// Parses a graph from text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum OcStatus oc_graph_parse(const char *text, enum OcFormat format, struct OcGraph **out);

// Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
//
// # Safety
// `endpoints` must point to `2 * m` values (or be NULL when `m == 0`) and
// `out` must be valid.
enum OcStatus oc_graph_from_edges(size_t n,
                                  const size_t *endpoints,
                                  size_t m,
                                  struct OcGraph **out);

// Releases a graph. NULL is ignored.
//
// # Safety
// `g` must come from this library and not be freed twice.
void oc_graph_free(struct OcGraph *g);

// Number of vertices; 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t oc_graph_vertex_count(const struct OcGraph *g);

// Number of edges; 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t oc_graph_edge_count(const struct OcGraph *g);

// Serializes the graph in the given format.
//
// # Safety
// `g` must be a live handle and `out` valid.
enum OcStatus oc_graph_write(const struct OcGraph *g, enum OcFormat format, char **out);

// Membership test; also writes the block classification as JSON when
// `out_json` is not NULL.
//
// # Safety
// `g` must be a live handle, `in_class` valid, `out_json` NULL or valid.
enum OcStatus oc_classify(const struct OcGraph *g, bool *in_class, char **out_json);

// Kernel-perfect `t`-orientation (`t >= max(4, Δ)`) as a JSON report with
// the graph, demand, arcs and certificate.
//
// # Safety
// `g` must be a live handle and `out_json` valid.
enum OcStatus oc_orient(const struct OcGraph *g, size_t t, char **out_json);

// Colors the edges from JSON lists `{"edge": [colors]}`; writes
// `{"edge": color}`.
//
// # Safety
// `g` must be a live handle, `lists_json` a NUL-terminated string and
// `out_json` valid.
enum OcStatus oc_choose_edges(const struct OcGraph *g, const char *lists_json, char **out_json);

// Checks an orientation report (as produced by `oc_orient`) for
// kernel-perfectness by exhaustive search (at most 20 edges).
//
// # Safety
// `orientation_json` must be a NUL-terminated string, `result` valid.
enum OcStatus oc_verify_kernel_perfect(const char *orientation_json, bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODDCYCLE_H */
