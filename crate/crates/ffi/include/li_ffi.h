#ifndef LI_FFI_H
#define LI_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2 to 9 agree with the exit codes of the `li` binary.
 */
typedef enum LiStatus {
  LI_STATUS_OK = 0,
  LI_STATUS_INVALID_ARGUMENT = 2,
  LI_STATUS_CACHE = 3,
  LI_STATUS_MISSED_ZERO = 4,
  LI_STATUS_BUDGET_EXCEEDED = 5,
  LI_STATUS_FIT_FAILURE = 6,
  LI_STATUS_POLE = 7,
  LI_STATUS_NO_CONVERGENCE = 8,
  LI_STATUS_TABLE_TOO_SHORT = 9,
  LI_STATUS_NULL_POINTER = 10,
  LI_STATUS_PANIC = 11,
} LiStatus;

/**
 * Opaque H_n evaluator for one fixed n.
 */
typedef struct LiHnContext LiHnContext;

/**
 * Opaque zero table.
 */
typedef struct LiZeroTable LiZeroTable;

typedef struct LiComplex {
  double re;
  double im;
} LiComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of the calling thread into `buf`,
 * NUL-terminated and truncated to `len` bytes. Returns the full message
 * length without the terminator, so a caller can size a second attempt.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t li_last_error_message(char *buf, size_t len);

/**
 * Finds all zeros with 0 < γ ≤ `height` from scratch.
 *
 * # Safety
 * `table_out` must be a valid pointer; on success it receives a handle to
 * be released with [`li_zeros_free`].
 */
enum LiStatus li_zeros_compute(double height, struct LiZeroTable **table_out);

/**
 * Like [`li_zeros_compute`] but reads and updates the cache in `cache_dir`.
 *
 * # Safety
 * `cache_dir` must be a NUL-terminated UTF-8 path; `table_out` as in
 * [`li_zeros_compute`].
 */
enum LiStatus li_zeros_load(const char *cache_dir,
                            double height,
                            bool recompute,
                            struct LiZeroTable **table_out);

/**
 * Number of distinct ordinates; 0 for a null handle.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
size_t li_zeros_len(const struct LiZeroTable *table);

/**
 * Height bound the table is complete to; NaN for a null handle.
 *
 * # Safety
 * `table` must be null or a live handle.
 */
double li_zeros_height(const struct LiZeroTable *table);

/**
 * Ordinate and multiplicity of zero `index` (0-based, ascending).
 *
 * # Safety
 * `table` must be a live handle, the out-pointers valid.
 */
enum LiStatus li_zeros_get(const struct LiZeroTable *table,
                           size_t index,
                           double *gamma_out,
                           uint32_t *multiplicity_out);

/**
 * # Safety
 * `table` must be null or a handle not yet freed.
 */
void li_zeros_free(struct LiZeroTable *table);

/**
 * λ_n from Stieltjes constants, with an error estimate.
 *
 * # Safety
 * Out-pointers must be valid.
 */
enum LiStatus li_lambda_arithmetic(uint32_t n, double *value_out, double *err_out);

/**
 * λ_n from the zeros in `table`, tail-corrected; `tail_out` is the error
 * budget of the truncation.
 *
 * # Safety
 * `table` must be a live handle, the out-pointers valid.
 */
enum LiStatus li_lambda_zero_sum(const struct LiZeroTable *table,
                                 uint32_t n,
                                 double *value_out,
                                 double *tail_out);

/**
 * λ_n as ‖G_n‖²/2π integrated over [−span, span] plus a fitted tail.
 *
 * # Safety
 * Out-pointers must be valid.
 */
enum LiStatus li_lambda_norm(uint32_t n,
                             double span,
                             double rel_tol,
                             double *value_out,
                             double *err_out);

/**
 * # Safety
 * `ctx_out` must be valid; the handle is released with [`li_hn_free`].
 */
enum LiStatus li_hn_new(uint32_t n, struct LiHnContext **ctx_out);

/**
 * H_n(s).
 *
 * # Safety
 * `ctx` must be a live handle, `value_out` valid.
 */
enum LiStatus li_hn_eval(const struct LiHnContext *ctx,
                         struct LiComplex s,
                         struct LiComplex *value_out);

/**
 * G_n(z), the same function in the upper half-plane variable.
 *
 * # Safety
 * `ctx` must be a live handle, `value_out` valid.
 */
enum LiStatus li_gn_eval(const struct LiHnContext *ctx,
                         struct LiComplex z,
                         struct LiComplex *value_out);

/**
 * # Safety
 * `ctx` must be null or a handle not yet freed.
 */
void li_hn_free(struct LiHnContext *ctx);

/**
 * ζ(s) at default accuracy.
 *
 * # Safety
 * `value_out` must be valid.
 */
enum LiStatus li_zeta(struct LiComplex s, struct LiComplex *value_out);

/**
 * ξ(s) = s(s−1)/2 · π^{−s/2} Γ(s/2) ζ(s).
 *
 * # Safety
 * `value_out` must be valid.
 */
enum LiStatus li_xi(struct LiComplex s, struct LiComplex *value_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LI_FFI_H */
