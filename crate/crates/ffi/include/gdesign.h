#ifndef GDESIGN_H
#define GDESIGN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum GdStatus {
  GD_STATUS_OK = 0,
  GD_STATUS_NULL_POINTER = 1,
  GD_STATUS_INVALID_UTF8 = 2,
  GD_STATUS_BUFFER_TOO_SMALL = 3,
  GD_STATUS_PANIC = 4,
  GD_STATUS_VERTEX_OUT_OF_RANGE = 10,
  GD_STATUS_SELF_LOOP = 11,
  GD_STATUS_DISCONNECTED = 12,
  GD_STATUS_EMPTY_GRAPH = 13,
  GD_STATUS_EMPTY_SUBSET = 14,
  GD_STATUS_DUPLICATE_VERTEX = 15,
  GD_STATUS_GRAPH6 = 16,
  GD_STATUS_LCF = 17,
  GD_STATUS_EDGE_LIST = 18,
  GD_STATUS_PARAMETER = 19,
  GD_STATUS_UNKNOWN_GRAPH = 20,
  GD_STATUS_CATALOG_INVARIANT = 21,
  GD_STATUS_NON_REGULAR = 22,
  GD_STATUS_NOT_SYMMETRIC = 23,
  GD_STATUS_EIGEN_NON_CONVERGENCE = 24,
  GD_STATUS_DIMENSION_MISMATCH = 25,
  GD_STATUS_WEIGHT_NORMALIZATION = 26,
  GD_STATUS_NON_POSITIVE_WEIGHTS = 27,
  GD_STATUS_BUDGET_EXCEEDED = 28,
  GD_STATUS_SINGULAR_MINOR = 29,
  GD_STATUS_NO_MINOR = 30,
} GdStatus;

// Opaque graph handle.
typedef struct GdGraph GdGraph;

// Opaque spectrum handle: eigenpairs plus the frequency-class bases.
typedef struct GdSpectrum GdSpectrum;

// Strength of a design.
typedef struct GdStrength {
  // Leading eigenfunctions integrated under the best ordering.
  uintptr_t k;
  // Eigenfunctions in fully integrated frequency classes.
  uintptr_t k_min;
  // Frequency of the first class that is not integrated; 0 if none.
  double lambda_star;
} GdStrength;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. Valid until the
// next failing call on the same thread.
const char *gd_last_error(void);

// Stable lowercase name of a status code.
const char *gd_status_name(enum GdStatus status);

// Builds a named catalog graph.
enum GdStatus gd_graph_from_catalog(const char *name, struct GdGraph **out);

// Builds a graph from an LCF code such as `[5,-9,7,-7,9,-5]^4`.
enum GdStatus gd_graph_from_lcf(const char *code, struct GdGraph **out);

// Builds a graph from a graph6 string.
enum GdStatus gd_graph_from_graph6(const char *g6, struct GdGraph **out);

// Builds a connected simple graph on `n` vertices from `edge_count` pairs
// stored flat in `edges` (`u0, v0, u1, v1, ...`).
enum GdStatus gd_graph_from_edges(uintptr_t n,
                                  const uintptr_t *edges,
                                  uintptr_t edge_count,
                                  struct GdGraph **out);

// Releases a graph. Null is ignored.
void gd_graph_free(struct GdGraph *graph);

// Number of vertices, or 0 for a null handle.
uintptr_t gd_graph_order(const struct GdGraph *graph);

// Number of edges, or 0 for a null handle.
uintptr_t gd_graph_edge_count(const struct GdGraph *graph);

// Hop distances from the vertex set to every vertex; `out` holds `n` entries.
enum GdStatus gd_graph_distances(const struct GdGraph *graph,
                                 const uintptr_t *sources,
                                 uintptr_t source_count,
                                 uintptr_t *out,
                                 uintptr_t out_len);

// Eigendecomposition of the random-walk operator with frequency classes
// split at gaps above `eps_deg`.
enum GdStatus gd_spectrum_new(const struct GdGraph *graph,
                              double eps_eig,
                              double eps_deg,
                              struct GdSpectrum **out);

// Releases a spectrum. Null is ignored.
void gd_spectrum_free(struct GdSpectrum *spectrum);

// Eigenvalues of `AD^-1 - I` in frequency order; `out` holds `n` entries.
enum GdStatus gd_spectrum_eigenvalues(const struct GdSpectrum *spectrum,
                                      double *out,
                                      uintptr_t out_len);

// Number of frequency classes.
uintptr_t gd_spectrum_class_count(const struct GdSpectrum *spectrum);

// Strength of a design. `weights` may be null for equal weights; otherwise
// it holds one weight per vertex in the order given, summing to 1.
enum GdStatus gd_design_strength(const struct GdSpectrum *spectrum,
                                 const uintptr_t *vertices,
                                 uintptr_t len,
                                 const double *weights,
                                 double eps_int,
                                 struct GdStrength *out);

// Checks the neighbourhood-growth bounds at every radius for a positive-weight
// design on a regular graph. `passed` is set to 1 or 0.
enum GdStatus gd_check_bounds(const struct GdGraph *graph,
                              const struct GdSpectrum *spectrum,
                              const uintptr_t *vertices,
                              uintptr_t len,
                              const double *weights,
                              double eps_int,
                              int32_t *passed);

// Exhaustive search over equal-weight subsets of `size` vertices. Writes the
// best strength, the number of maximizers and the lexicographically first
// maximizer (`size` entries) to `witness`.
enum GdStatus gd_brute_force(const struct GdSpectrum *spectrum,
                             uintptr_t size,
                             double eps_int,
                             uint64_t budget,
                             uintptr_t *best_k,
                             uint64_t *witness_count,
                             uintptr_t *witness);

// `k` vertices and weights integrating the first `k` eigenfunctions.
// `vertices` and `weights` hold `k` entries each.
enum GdStatus gd_minor_design(const struct GdSpectrum *spectrum,
                              uintptr_t k,
                              double eps_sing,
                              uintptr_t *vertices,
                              double *weights,
                              double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GDESIGN_H */
