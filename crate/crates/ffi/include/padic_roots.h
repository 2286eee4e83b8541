#ifndef PADIC_ROOTS_H
#define PADIC_ROOTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PadicOp {
  PADIC_OP_ADD = 0,
  PADIC_OP_SUB = 1,
  PADIC_OP_MUL = 2,
  PADIC_OP_DIV = 3,
} PadicOp;

typedef enum PadicStatus {
  PADIC_STATUS_OK = 0,
  PADIC_STATUS_NULL_POINTER = 1,
  PADIC_STATUS_INVALID_UTF8 = 2,
  PADIC_STATUS_PARSE = 3,
  PADIC_STATUS_INVALID_PRIME = 4,
  PADIC_STATUS_PRIME_MISMATCH = 5,
  PADIC_STATUS_DIVISION_BY_ZERO = 6,
  PADIC_STATUS_PRECISION_EXHAUSTED = 7,
  PADIC_STATUS_INSUFFICIENT_PRECISION = 8,
  PADIC_STATUS_INVALID_ARGUMENT = 9,
  PADIC_STATUS_HYPOTHESIS_VIOLATED = 10,
  PADIC_STATUS_VERIFICATION_FAILED = 11,
  PADIC_STATUS_INDEX_OUT_OF_RANGE = 12,
  PADIC_STATUS_BUFFER_TOO_SMALL = 13,
  PADIC_STATUS_PANIC = 14,
} PadicStatus;

typedef enum PadicValuationKind {
  // The valuation is known exactly.
  PADIC_VALUATION_KIND_EXACT = 0,
  // Only a lower bound is known: the value is `O(p^v)`.
  PADIC_VALUATION_KIND_AT_LEAST = 1,
  // Exact zero.
  PADIC_VALUATION_KIND_INFINITE = 2,
} PadicValuationKind;

typedef enum PadicVerdict {
  PADIC_VERDICT_SOLVABLE = 0,
  PADIC_VERDICT_NORM_NOT_KTH_POWER = 1,
  PADIC_VERDICT_EMPTY_SOL_P = 2,
  PADIC_VERDICT_CONDITION_II_FAILED = 3,
} PadicVerdict;

// Opaque solver report.
typedef struct PadicReport PadicReport;

// Opaque p-adic number.
typedef struct PadicValue PadicValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null.
// The pointer stays valid until the next failing call on this thread.
const char *padic_last_error(void);

// # Safety
// `s` must come from a `padic_*_to_string` call and not have been freed.
void padic_string_free(char *s);

// Parse an integer (`-71`), rational (`6/25`) or digit-form (`1,3,0,4@0`)
// literal over `Q_p`. Integers and rationals are expanded to
// `rel_precision` digits; digit-form literals carry their own precision.
//
// # Safety
// `literal` must be a NUL-terminated string and `out` a writable pointer.
enum PadicStatus padic_value_parse(uint64_t p,
                                   const char *literal,
                                   uint32_t rel_precision,
                                   struct PadicValue **out);

// # Safety
// `out` must be a writable pointer.
enum PadicStatus padic_value_from_i64(uint64_t p,
                                      int64_t n,
                                      uint32_t rel_precision,
                                      struct PadicValue **out);

// # Safety
// `v` must be null or a live handle from this library.
void padic_value_free(struct PadicValue *v);

// `out = x op y`. Add, Sub and Mul fail with `PrecisionExhausted` when every
// known digit cancels.
//
// # Safety
// `x` and `y` must be live handles and `out` a writable pointer.
enum PadicStatus padic_value_arith(enum PadicOp op,
                                   const struct PadicValue *x,
                                   const struct PadicValue *y,
                                   struct PadicValue **out);

// # Safety
// `v` must be a live handle; `kind` and `valuation` writable pointers.
enum PadicStatus padic_value_valuation(const struct PadicValue *v,
                                       enum PadicValuationKind *kind,
                                       int64_t *valuation);

// The prime of `v`, or 0 if `v` is null.
//
// # Safety
// `v` must be null or a live handle.
uint64_t padic_value_prime(const struct PadicValue *v);

// Copy the known digits of `v`, least significant first, into `buf`.
// `*len` always receives the digit count; if `cap` is smaller, nothing is
// copied and `BufferTooSmall` is returned. `buf` may be null when `cap` is 0.
//
// # Safety
// `v` must be a live handle, `buf` valid for `cap` writes, `len` writable.
enum PadicStatus padic_value_digits(const struct PadicValue *v,
                                    uint64_t *buf,
                                    size_t cap,
                                    size_t *len);

// Digit form of `v`, e.g. `1,3,0,4@0`. Free with `padic_string_free`.
//
// # Safety
// `v` must be null or a live handle.
char *padic_value_to_string(const struct PadicValue *v);

// Decide solvability of `x^k = a` without lifting.
//
// # Safety
// `a` must be a live handle; `out_verdict` and `out_kappa` writable.
enum PadicStatus padic_check(uint64_t k,
                             const struct PadicValue *a,
                             enum PadicVerdict *out_verdict,
                             size_t *out_kappa);

// All roots of `x^k = a` to `n_digits` digits. A `NoSolution` verdict is a
// successful report with zero roots.
//
// # Safety
// `a` must be a live handle and `out` a writable pointer.
enum PadicStatus padic_solve_root(uint64_t k,
                                  const struct PadicValue *a,
                                  uint32_t n_digits,
                                  struct PadicReport **out);

// Roots in `Z_p` of a monic polynomial given by `len` descending
// coefficients, the first of which must be 1.
//
// # Safety
// `coeffs` must point to `len` live handles and `out` be writable.
enum PadicStatus padic_solve_polynomial(const struct PadicValue *const *coeffs,
                                        size_t len,
                                        uint32_t n_digits,
                                        struct PadicReport **out);

// Fixed points of `f(x) = ((b x - c) / (x - d))^k`. Fails with
// `HypothesisViolated` when the parameters are outside the supported regime.
//
// # Safety
// `b`, `c`, `d` must be live handles and `out` a writable pointer.
enum PadicStatus padic_fixed_points(const struct PadicValue *b,
                                    const struct PadicValue *c,
                                    const struct PadicValue *d,
                                    uint64_t k,
                                    uint32_t n_digits,
                                    struct PadicReport **out);

// # Safety
// `r` must be null or a live handle from this library.
void padic_report_free(struct PadicReport *r);

// Fixed-point reports are always `Solvable`.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum PadicStatus padic_report_verdict(const struct PadicReport *r, enum PadicVerdict *out);

// # Safety
// `r` must be null or a live handle.
size_t padic_report_kappa(const struct PadicReport *r);

// Number of roots, or of fixed points (including `x = 1`).
//
// # Safety
// `r` must be null or a live handle.
size_t padic_report_root_count(const struct PadicReport *r);

// A fresh handle for root `i` and its residue class `xi` mod p. For fixed
// points `xi` is the leading digit of `y = (b x - c) / (x - d)`.
//
// # Safety
// `r` must be a live handle; `out_root` and `out_xi` writable.
enum PadicStatus padic_report_root(const struct PadicReport *r,
                                   size_t i,
                                   struct PadicValue **out_root,
                                   uint64_t *out_xi);

// Human-readable report. Free with `padic_string_free`.
//
// # Safety
// `r` must be null or a live handle.
char *padic_report_to_string(const struct PadicReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADIC_ROOTS_H */
