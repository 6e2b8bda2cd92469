/* SPDX-License-Identifier: Apache-2.0 */

#ifndef HOLDCIRCLE_H
#define HOLDCIRCLE_H

/* Generated by cbindgen from the holdcircle-ffi crate. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_DEGENERATE = 3,
  HC_STATUS_PARSE = 4,
  HC_STATUS_INVALID_START = 5,
  HC_STATUS_NOT_FOUND = 6,
  HC_STATUS_INTERNAL = 7,
} HcStatus;

typedef enum HcVerdict {
  HC_VERDICT_CERTIFIED_HOLDING_EVIDENCE = 0,
  HC_VERDICT_ESCAPE_FOUND = 1,
  HC_VERDICT_INCONCLUSIVE = 2,
} HcVerdict;

/**
 * Opaque convex polytope.
 */
typedef struct HcPolytope HcPolytope;

/**
 * Opaque holding report.
 */
typedef struct HcReport HcReport;

/**
 * Circle in space; `normal` need not be normalized on input.
 */
typedef struct HcCircle {
  double center[3];
  double diameter;
  double normal[3];
} HcCircle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hc_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *hc_last_error(void);

/**
 * Convex hull of `n_points` points stored as `x0 y0 z0 x1 y1 z1 …`.
 */
enum HcStatus hc_polytope_from_points(const double *xyz, size_t n_points, struct HcPolytope **out);

/**
 * Body from `{"vertices": [[x, y, z], …]}`.
 */
enum HcStatus hc_polytope_from_json(const char *json, struct HcPolytope **out);

void hc_polytope_free(struct HcPolytope *p);

enum HcStatus hc_polytope_vertex_count(const struct HcPolytope *p, size_t *out);

enum HcStatus hc_polytope_face_count(const struct HcPolytope *p, size_t *out);

/**
 * Copies vertex `index` into `out[0..3]`.
 */
enum HcStatus hc_polytope_vertex(const struct HcPolytope *p, size_t index, double *out);

enum HcStatus hc_polytope_volume(const struct HcPolytope *p, double *out);

/**
 * Exact width; `direction` (3 doubles) may be null.
 */
enum HcStatus hc_width(const struct HcPolytope *p, double *width, double *direction);

/**
 * Diameter of the smallest circumscribing cylinder found.
 */
enum HcStatus hc_min_cylinder(const struct HcPolytope *p, double *diameter);

/**
 * Octahedron iceberg `(a, h)` with its reference circle (`circle` may be null).
 */
enum HcStatus hc_octahedron_iceberg(double a,
                                    double h,
                                    struct HcPolytope **out,
                                    struct HcCircle *circle);

/**
 * Flat tetrahedron with parameter `eps` and its reference circle (`circle` may be null).
 */
enum HcStatus hc_flat_tetrahedron(double eps, struct HcPolytope **out, struct HcCircle *circle);

/**
 * Runs every holding certificate for `circle` with an escape search of
 * `budget` poses.
 */
enum HcStatus hc_holding_report(const struct HcPolytope *p,
                                const struct HcCircle *circle,
                                size_t budget,
                                uint64_t seed,
                                struct HcReport **out);

/**
 * Smallest certified holding circle found by the search.
 */
enum HcStatus hc_min_holding_circle(const struct HcPolytope *p,
                                    size_t budget,
                                    uint64_t seed,
                                    struct HcCircle *out);

enum HcStatus hc_report_verdict(const struct HcReport *r, enum HcVerdict *out);

/**
 * Report as JSON; free the string with [`hc_string_free`].
 */
enum HcStatus hc_report_to_json(const struct HcReport *r, char **out);

void hc_report_free(struct HcReport *r);

void hc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOLDCIRCLE_H */
