#ifndef FRACLAPLACE_H
#define FRACLAPLACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LT_FAMILY_MONOMIAL 0

#define LT_FAMILY_SHIFTED 1

#define LT_FAMILY_BINOMIAL 2

#define LT_SIGN_PLUS 1

#define LT_SIGN_MINUS -1

/**
 * Status codes. Zero is success.
 */
typedef enum LtStatus {
  LT_STATUS_OK = 0,
  LT_STATUS_NULL_POINTER = 1,
  LT_STATUS_DOMAIN = 2,
  LT_STATUS_INVALID_EXPR = 3,
  LT_STATUS_UNSUPPORTED = 4,
  /**
   * The result was written, but its error bound missed the target.
   */
  LT_STATUS_NON_CONVERGENT = 5,
  LT_STATUS_DIVERGENT_TRANSFORM = 6,
  LT_STATUS_QUADRATURE_FAILURE = 7,
  LT_STATUS_STEP_TOO_COARSE = 8,
  LT_STATUS_BUFFER_TOO_SMALL = 9,
  LT_STATUS_INDEX_OUT_OF_RANGE = 10,
  LT_STATUS_PANIC = 11,
} LtStatus;

/**
 * Opaque handle to an inverse transform.
 */
typedef struct LtGf LtGf;

/**
 * Value with an estimated absolute error bound.
 */
typedef struct LtEval {
  double value;
  double abs_err;
} LtEval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *lt_status_message(enum LtStatus status);

/**
 * `1/Γ(x)`; exactly zero at non-positive integers.
 */
double lt_rgamma(double x);

/**
 * `E_{α,β}(z)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum LtStatus lt_ml_eval(double alpha, double beta, double z, struct LtEval *out);

/**
 * Inverts `mu · s^q / D(s)`; `family` is one of the `LT_FAMILY_*`
 * constants and `sign` one of `LT_SIGN_*` (the sign of λ in the time
 * domain). `alpha`, `sign` and `lambda` are ignored for the monomial.
 *
 * # Safety
 * `out` must be null or valid for writes. On success `*out` owns a handle
 * that must be released with [`lt_gf_free`].
 */
enum LtStatus lt_invert(double mu,
                        double q,
                        int32_t family,
                        double alpha,
                        int32_t sign,
                        double lambda,
                        struct LtGf **out);

/**
 * Releases a handle. Null is accepted.
 *
 * # Safety
 * `gf` must be null or a handle from [`lt_invert`] not yet freed.
 */
void lt_gf_free(struct LtGf *gf);

/**
 * Number of delta-derivative terms.
 *
 * # Safety
 * `gf` must be a live handle or null; `out` null or valid for writes.
 */
enum LtStatus lt_gf_singular_count(const struct LtGf *gf, size_t *out);

/**
 * Number of regular terms.
 *
 * # Safety
 * `gf` must be a live handle or null; `out` null or valid for writes.
 */
enum LtStatus lt_gf_regular_count(const struct LtGf *gf, size_t *out);

/**
 * Coefficient and order of the `index`-th delta-derivative term
 * (descending order).
 *
 * # Safety
 * `gf` must be a live handle or null; out pointers null or valid.
 */
enum LtStatus lt_gf_singular_term(const struct LtGf *gf,
                                  size_t index,
                                  double *coeff,
                                  double *order);

/**
 * Regular part at `t > 0` (delta derivatives excluded).
 *
 * # Safety
 * `gf` must be a live handle or null; `out` null or valid for writes.
 */
enum LtStatus lt_gf_eval_regular(const struct LtGf *gf, double t, struct LtEval *out);

/**
 * Regular part plus the pointwise form of every delta derivative at `t > 0`.
 *
 * # Safety
 * `gf` must be a live handle or null; `out` null or valid for writes.
 */
enum LtStatus lt_gf_eval_pointwise(const struct LtGf *gf, double t, struct LtEval *out);

/**
 * Forward Laplace transform at real `s`.
 *
 * # Safety
 * `gf` must be a live handle or null; `out` null or valid for writes.
 */
enum LtStatus lt_forward_laplace(const struct LtGf *gf, double s, struct LtEval *out);

/**
 * Renders the handle as UTF-8 text. `*needed` receives the byte length
 * without the terminator; the text is written only when `cap > *needed`.
 * Pass `buf = NULL, cap = 0` to query the size.
 *
 * # Safety
 * `gf` must be a live handle or null; `needed` null or valid for writes;
 * `buf` valid for `cap` bytes when `cap > 0`.
 */
enum LtStatus lt_gf_format(const struct LtGf *gf, char *buf, size_t cap, size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACLAPLACE_H */
