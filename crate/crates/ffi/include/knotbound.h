#ifndef KNOTBOUND_H
#define KNOTBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  KB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  KB_STATUS_NULL_POINTER = 1,
  KB_STATUS_INVALID_UTF8 = 2,
  KB_STATUS_INVALID_JSON = 3,
  KB_STATUS_INVALID_PARAMETER = 4,
  /**
   * Too few vertices, non-finite coordinates, repeated vertices.
   */
  KB_STATUS_INVALID_CURVE = 5,
  KB_STATUS_SELF_INTERSECTION = 6,
  /**
   * The quantity is not defined for this curve (e.g. open curves).
   */
  KB_STATUS_UNSUPPORTED = 7,
  /**
   * A check's hypothesis does not hold for the inputs.
   */
  KB_STATUS_PRECONDITION = 8,
  KB_STATUS_DEGENERATE = 9,
  KB_STATUS_IO = 10,
  KB_STATUS_PANIC = 11,
} KbStatus;

/**
 * Opaque curve handle.
 */
typedef struct KbCurve KbCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *kb_last_error(void);

/**
 * Build a curve from `n_vertices` packed `x, y, z` triples. A closed curve
 * must not repeat its first vertex at the end.
 */
KbStatus kb_curve_new(const double *xyz, size_t n_vertices, bool closed, KbCurve **out);

void kb_curve_free(KbCurve *curve);

void kb_string_free(char *s);

KbStatus kb_curve_vertex_count(const KbCurve *curve, size_t *out);

/**
 * Copy the vertices into `xyz`, which must hold `3 * vertex_count` doubles.
 */
KbStatus kb_curve_vertices(const KbCurve *curve, double *xyz);

KbStatus kb_curve_from_json(const char *json, KbCurve **out);

KbStatus kb_curve_to_json(const KbCurve *curve, char **out);

/**
 * Sample a curve family from a JSON spec such as
 * `{"family": "torus_knot", "p": 2, "q": 3, "major_radius": 3, "minor_radius": 1, "samples": 512}`.
 */
KbStatus kb_generate(const char *spec_json, KbCurve **out);

KbStatus kb_length(const KbCurve *curve, double *out);

KbStatus kb_total_curvature(const KbCurve *curve, double *out);

/**
 * Thickness radius `min(minRad, dcsd/2)` of a closed curve.
 */
KbStatus kb_thickness(const KbCurve *curve, double *out);

KbStatus kb_ropelength(const KbCurve *curve, double *out);

/**
 * Average crossing number; `error` (may be null) receives its error bound.
 */
KbStatus kb_acn(const KbCurve *curve, double *value, double *error);

KbStatus kb_writhe(const KbCurve *curve, double *value, double *error);

KbStatus kb_mobius_energy(const KbCurve *curve, double *value, double *error);

/**
 * Illumination of the curve from `basepoint[3]`.
 */
KbStatus kb_illumination(const KbCurve *curve,
                         const double *basepoint,
                         double *value,
                         double *error);

/**
 * The full invariant report as JSON.
 */
KbStatus kb_invariants_json(const KbCurve *curve, bool refine, char **out);

/**
 * Run one check, e.g. `{"which": "illumination", "basepoint": [0, 0, 5]}`,
 * and return its certificates as a JSON array. `all_pass` (may be null)
 * reports whether every certificate passed; a failed certificate is not an
 * error status.
 */
KbStatus kb_verify_json(const KbCurve *curve, const char *request_json, char **out, bool *all_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTBOUND_H */
