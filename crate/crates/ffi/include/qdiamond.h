#ifndef QDIAMOND_H
#define QDIAMOND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_UTF8 = 2,
  QD_STATUS_INVALID_ARGUMENT = 3,
  QD_STATUS_PARSE = 4,
  QD_STATUS_RING_MISMATCH = 5,
  QD_STATUS_NOT_INVERTIBLE = 6,
  QD_STATUS_INSUFFICIENT_ORDER = 7,
  QD_STATUS_BUFFER_TOO_SMALL = 8,
  QD_STATUS_IO = 9,
  QD_STATUS_PANIC = 10,
} QdStatus;

// Opaque truncated power series.
typedef struct QdSeries QdSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Size in bytes (including the NUL) of the last error message on this
// thread, or 0 if there is none.
uintptr_t qd_last_error_length(void);

// Copies the last error message into `buf`.
//
// # Safety
// `buf` must be valid for `len` bytes.
enum QdStatus qd_last_error_message(char *buf, uintptr_t len);

// Expands a product written as `scalar * q^s * P(d)^e * M(d)^e ...`.
// `modulus` 0 selects exact integers.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum QdStatus qd_series_expand(const char *spec,
                               uintptr_t order,
                               uint64_t modulus,
                               struct QdSeries **out);

// `sum Delta_k(n) q^n` up to `q^order`.
//
// # Safety
// `out` must be writable.
enum QdStatus qd_series_broken_diamond(uint32_t k,
                                       uintptr_t order,
                                       uint64_t modulus,
                                       struct QdSeries **out);

// `psi(q^d)` up to `q^order`.
//
// # Safety
// `out` must be writable.
enum QdStatus qd_series_psi(uintptr_t d, uintptr_t order, uint64_t modulus, struct QdSeries **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `series` must come from this library and not have been freed.
void qd_series_free(struct QdSeries *series);

// # Safety
// `series` must be a live handle; `out_order` must be writable.
enum QdStatus qd_series_order(const struct QdSeries *series, uintptr_t *out_order);

// Coefficient modulus of the series, 0 for exact.
//
// # Safety
// `series` must be a live handle; `out_modulus` must be writable.
enum QdStatus qd_series_modulus(const struct QdSeries *series, uint32_t *out_modulus);

// Residue in `[0, m)` of the coefficient of `q^n` of a modular series.
//
// # Safety
// `series` must be a live handle; `out_value` must be writable.
enum QdStatus qd_series_coeff_residue(const struct QdSeries *series,
                                      uintptr_t n,
                                      uint32_t *out_value);

// Decimal text of the coefficient of `q^n`.
//
// # Safety
// `series` must be a live handle; `buf` valid for `len` bytes; `needed`
// null or writable.
enum QdStatus qd_series_coeff_string(const struct QdSeries *series,
                                     uintptr_t n,
                                     char *buf,
                                     uintptr_t len,
                                     uintptr_t *needed);

// # Safety
// Handles must be live; `out` writable.
enum QdStatus qd_series_mul(const struct QdSeries *a,
                            const struct QdSeries *b,
                            struct QdSeries **out);

// # Safety
// Handle must be live; `out` writable.
enum QdStatus qd_series_inverse(const struct QdSeries *a, struct QdSeries **out);

// `sum a(d n + r) q^n`.
//
// # Safety
// Handle must be live; `out` writable.
enum QdStatus qd_series_dissect(const struct QdSeries *a,
                                uintptr_t d,
                                uintptr_t r,
                                struct QdSeries **out);

// # Safety
// Handle must be live; `out` writable.
enum QdStatus qd_series_reduce_mod(const struct QdSeries *a, uint64_t m, struct QdSeries **out);

// Compares coefficients `0..=n`. `out_first_mismatch` receives -1 when
// equal.
//
// # Safety
// Handles must be live; outputs writable.
enum QdStatus qd_series_eq_up_to(const struct QdSeries *a,
                                 const struct QdSeries *b,
                                 uintptr_t n,
                                 bool *out_equal,
                                 int64_t *out_first_mismatch);

// Hecke eigenvalue of `series` under `T(p)` in weight `weight`, checked on
// coefficients `0..=order/p`. `level` 0 uses the trivial character,
// otherwise the principal character mod `level`. On success `out_is_eigen`
// is set and, when true, the eigenvalue is written to `buf` in decimal;
// when false, `out_failure_index` receives the first failing index.
//
// # Safety
// Handle must be live; `buf` valid for `len` bytes; pointers writable or
// (for `needed`) null.
enum QdStatus qd_eigen_check(const struct QdSeries *series,
                             uint64_t p,
                             uint32_t weight,
                             uint64_t level,
                             bool *out_is_eigen,
                             uintptr_t *out_failure_index,
                             char *buf,
                             uintptr_t len,
                             uintptr_t *needed);

// `Delta_k(n)` by brute-force counting, as decimal text.
//
// # Safety
// `buf` valid for `len` bytes; `needed` null or writable.
enum QdStatus qd_count_broken_diamonds(uint32_t k,
                                       uint64_t n,
                                       char *buf,
                                       uintptr_t len,
                                       uintptr_t *needed);

// Verifies a congruence family (`name`, `params` such as `"l=2"`) with
// coefficient budget `order`. `out_json` receives one JSON report per line;
// release it with [`qd_string_free`].
//
// # Safety
// Strings NUL-terminated; outputs writable.
enum QdStatus qd_verify_family(const char *name,
                               const char *params,
                               uint64_t order,
                               bool *out_all_pass,
                               char **out_json);

// Checks a built-in identity (`lemma31`, `radu-base`, `nine-generate`,
// `eightyone-generate`, `final:<l>`, `cube`) to `order`.
// `out_first_mismatch` receives -1 when the sides agree.
//
// # Safety
// `name` NUL-terminated; outputs writable.
enum QdStatus qd_verify_identity(const char *name,
                                 uintptr_t order,
                                 bool *out_equal,
                                 int64_t *out_first_mismatch);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDIAMOND_H */
