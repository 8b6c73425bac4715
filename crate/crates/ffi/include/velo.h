#ifndef VELO_H
#define VELO_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum VeloStatus {
  VELO_STATUS_OK = 0,
  VELO_STATUS_NULL_POINTER = 1,
  VELO_STATUS_INVALID_UTF8 = 2,
  VELO_STATUS_PARSE = 3,
  VELO_STATUS_BUDGET = 4,
  VELO_STATUS_CONNECTIVITY = 5,
  VELO_STATUS_INVALID = 6,
  VELO_STATUS_PANIC = 7,
} VeloStatus;

typedef enum VeloVerdict {
  VELO_VERDICT_STRONGLY_CONNECTED_PERIODIC = 0,
  VELO_VERDICT_QUOTIENT_CONNECTED_ONLY = 1,
  VELO_VERDICT_DISCONNECTED = 2,
} VeloVerdict;

/**
 * Opaque displacement graph.
 */
typedef struct VeloGraph VeloGraph;

/**
 * Opaque rational polytope.
 */
typedef struct VeloPolytope VeloPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *velo_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void velo_string_free(char *s);

/**
 * Parses DGF text.
 *
 * # Safety
 * `dgf` must be a NUL-terminated string; `out` must be writable.
 */
enum VeloStatus velo_graph_parse(const char *dgf, struct VeloGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, not yet freed.
 */
void velo_graph_free(struct VeloGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t velo_graph_dim(const struct VeloGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t velo_graph_vertex_count(const struct VeloGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t velo_graph_edge_count(const struct VeloGraph *g);

/**
 * Canonical DGF text of `g`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum VeloStatus velo_graph_serialize(const struct VeloGraph *g, char **out);

/**
 * Connectivity verdict of the periodic graph.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum VeloStatus velo_graph_verdict(const struct VeloGraph *g, enum VeloVerdict *out);

/**
 * Velocity polytope of a graph whose quotient is strongly connected.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum VeloStatus velo_velocity_polytope(const struct VeloGraph *g, struct VeloPolytope **out);

/**
 * Builds a polytope from its JSON form (vertices are re-hulled).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum VeloStatus velo_polytope_from_json(const char *json, struct VeloPolytope **out);

/**
 * # Safety
 * `p` must be a live polytope handle; `out` must be writable.
 */
enum VeloStatus velo_polytope_to_json(const struct VeloPolytope *p, char **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void velo_polytope_free(struct VeloPolytope *p);

/**
 * # Safety
 * `p` must be a live polytope handle.
 */
size_t velo_polytope_vertex_count(const struct VeloPolytope *p);

/**
 * Gauge of the integer vector `x[0..len]` as exact text ("p/q" or "inf").
 *
 * # Safety
 * `p` must be a live polytope handle; `x` must point to `len` integers;
 * `out` must be writable.
 */
enum VeloStatus velo_polytope_gauge(const struct VeloPolytope *p,
                                    const int64_t *x,
                                    size_t len,
                                    char **out);

/**
 * Whether `inner ⊆ outer`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum VeloStatus velo_polytope_contains(const struct VeloPolytope *outer,
                                       const struct VeloPolytope *inner,
                                       bool *out);

/**
 * A graph whose velocity polytope is `p`.
 *
 * # Safety
 * `p` must be a live polytope handle; `out` must be writable.
 */
enum VeloStatus velo_realize(const struct VeloPolytope *p, struct VeloGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VELO_H */
