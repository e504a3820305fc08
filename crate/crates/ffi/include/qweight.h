#ifndef QWEIGHT_H
#define QWEIGHT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Arithmetic operation for [`qw_scalar_binary`].
 */
typedef enum QwOp {
  QW_OP_ADD = 0,
  QW_OP_SUB = 1,
  QW_OP_MUL = 2,
  QW_OP_DIV = 3,
} QwOp;

/**
 * Result of every fallible call.
 */
typedef enum QwStatus {
  QW_STATUS_OK = 0,
  QW_STATUS_NULL_POINTER = 1,
  QW_STATUS_INVALID_UTF8 = 2,
  QW_STATUS_PARSE = 3,
  QW_STATUS_INVALID_ARGUMENT = 4,
  QW_STATUS_DIVISION_BY_ZERO = 5,
  QW_STATUS_POLE = 6,
  QW_STATUS_UNKNOWN_STATEMENT = 7,
  QW_STATUS_CACHE = 8,
  QW_STATUS_INTERNAL = 9,
  QW_STATUS_PANIC = 10,
} QwStatus;

/**
 * Verdict of one check, mirroring the report column.
 */
typedef enum QwVerdict {
  QW_VERDICT_VERIFIED = 0,
  QW_VERDICT_REFUTED = 1,
  QW_VERDICT_MISMATCH_REPORTED = 2,
  QW_VERDICT_SKIPPED = 3,
} QwVerdict;

/**
 * Shared options and caches for verification runs.
 */
typedef struct QwContext QwContext;

/**
 * The reports produced by one verification run.
 */
typedef struct QwReports QwReports;

/**
 * An exact element of Q(q, t).
 */
typedef struct QwScalar QwScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. Valid until the next call
 * that fails; never null.
 */
const char *qw_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void qw_string_free(char *s);

/**
 * Parses text such as `(1 - q^2)/(1 - q*t)`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum QwStatus qw_scalar_parse(const char *src, struct QwScalar **out);

/**
 * The integer `c`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QwStatus qw_scalar_from_int(int64_t c, struct QwScalar **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void qw_scalar_free(struct QwScalar *s);

/**
 * Canonical text of `s`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum QwStatus qw_scalar_to_string(const struct QwScalar *s, char **out);

/**
 * Whether two scalars are equal; written to `out` as 0 or 1.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum QwStatus qw_scalar_equal(const struct QwScalar *a, const struct QwScalar *b, int32_t *out);

/**
 * `out = a op b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum QwStatus qw_scalar_binary(enum QwOp op,
                               const struct QwScalar *a,
                               const struct QwScalar *b,
                               struct QwScalar **out);

/**
 * Value at `q = q_num/q_den`, `t = t_num/t_den`, written as `n/d` or `n`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum QwStatus qw_scalar_evaluate(const struct QwScalar *s,
                                 int64_t q_num,
                                 int64_t q_den,
                                 int64_t t_num,
                                 int64_t t_den,
                                 char **out);

/**
 * `CT(weight · (x; q)_a (q/x; q)_b)` over block sizes `n[0..len]`.
 *
 * # Safety
 * `n` must point to `len` readable values and `out` be writable.
 */
enum QwStatus qw_weight_integral(const size_t *n,
                                 size_t len,
                                 size_t lam,
                                 size_t a,
                                 size_t b,
                                 struct QwScalar **out);

/**
 * Number of statement ids; see [`qw_statement_id`].
 */
size_t qw_statement_count(void);

/**
 * Id of statement `i`, or null when out of range. Static; do not free.
 */
const char *qw_statement_id(size_t i);

/**
 * A verification context. `cache_dir` may be null to disable the cache;
 * `jobs` of 0 uses the default thread count.
 *
 * # Safety
 * `cache_dir` must be null or NUL-terminated, and `out` writable.
 */
enum QwStatus qw_context_new(const char *cache_dir,
                             size_t jobs,
                             int32_t dehomogenize,
                             struct QwContext **out);

/**
 * # Safety
 * `ctx` must be null or a live handle.
 */
void qw_context_free(struct QwContext *ctx);

/**
 * Runs the suite of `id` (or every suite for `all`). `grid_json` may be
 * null for the default grid, or an object such as `{"n0": [2], "lam": [1]}`.
 *
 * # Safety
 * `ctx` must be a live handle, `id` NUL-terminated, `grid_json` null or
 * NUL-terminated, and `out` writable.
 */
enum QwStatus qw_verify(const struct QwContext *ctx,
                        const char *id,
                        const char *grid_json,
                        uint64_t seed,
                        struct QwReports **out);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
void qw_reports_free(struct QwReports *r);

/**
 * Number of reports; 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
size_t qw_reports_len(const struct QwReports *r);

/**
 * Verdict of report `i`.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum QwStatus qw_reports_verdict(const struct QwReports *r, size_t i, enum QwVerdict *out);

/**
 * The reports as JSON lines (`structured != 0`) or the human table.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum QwStatus qw_reports_render(const struct QwReports *r, int32_t structured, char **out);

/**
 * Process exit code the CLI would use for these reports: 1 if any check
 * is refuted, 2 if any mismatch is reported, otherwise 0.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int32_t qw_reports_exit_code(const struct QwReports *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWEIGHT_H */
