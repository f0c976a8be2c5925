#ifndef IRRCHAIN_H
#define IRRCHAIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum IrrStatus {
  IRR_STATUS_OK = 0,
  IRR_STATUS_NULL_POINTER = 1,
  IRR_STATUS_INVALID_UTF8 = 2,
  IRR_STATUS_PARSE = 3,
  IRR_STATUS_INVALID_ARGUMENT = 4,
  IRR_STATUS_POLE = 5,
  IRR_STATUS_BUDGET_EXCEEDED = 6,
  IRR_STATUS_CHAIN_BROKEN = 7,
  IRR_STATUS_INTERNAL = 8,
} IrrStatus;

/**
 * Chain verification depth for [`irr_chain_generate`].
 */
typedef enum IrrVerify {
  IRR_VERIFY_NONE = 0,
  IRR_VERIFY_FAST = 1,
  IRR_VERIFY_FULL = 2,
} IrrVerify;

/**
 * Opaque finite field handle.
 */
typedef struct IrrField IrrField;

/**
 * Opaque polynomial handle.
 */
typedef struct IrrPoly IrrPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or "" after a success.
 * Valid until the next irrchain call on the same thread.
 */
const char *irr_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, freed once.
 */
void irr_string_free(char *s);

/**
 * Build a field from an order spec such as "7", "5^2" or "3^2^2".
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IrrStatus irr_field_new(const char *spec, struct IrrField **out);

/**
 * # Safety
 * `field` must be null or a handle from [`irr_field_new`], freed once.
 */
void irr_field_free(struct IrrField *field);

/**
 * Field order; fails with `BudgetExceeded` if it does not fit in 64 bits.
 *
 * # Safety
 * `field` must be a live handle and `out` a valid pointer.
 */
enum IrrStatus irr_field_order(const struct IrrField *field, uint64_t *out);

/**
 * Parse a polynomial such as "5;3,1" (constant term first).
 *
 * # Safety
 * `s` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IrrStatus irr_poly_parse(const char *s, struct IrrPoly **out);

/**
 * Polynomial over `field` from integer coefficients, constant term first.
 *
 * # Safety
 * `field` must be a live handle, `coeffs` must point to `len` values (or be
 * null with `len == 0`) and `out` must be a valid pointer.
 */
enum IrrStatus irr_poly_from_coeffs(const struct IrrField *field,
                                    const int64_t *coeffs,
                                    size_t len,
                                    struct IrrPoly **out);

/**
 * # Safety
 * `poly` must be null or a polynomial handle from this library, freed once.
 */
void irr_poly_free(struct IrrPoly *poly);

/**
 * Text form of a polynomial; release with [`irr_string_free`].
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum IrrStatus irr_poly_format(const struct IrrPoly *poly, char **out);

/**
 * Degree, or -1 for the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum IrrStatus irr_poly_degree(const struct IrrPoly *poly, int64_t *out);

/**
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum IrrStatus irr_poly_is_irreducible(const struct IrrPoly *poly, bool *out);

/**
 * Monic `(2x)^n g((x^2 + 1)/(2x))`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum IrrStatus irr_cohen_r(const struct IrrPoly *g, struct IrrPoly **out);

/**
 * Monic `R_{σ,t}(g)` for a matrix "a,b;c,d" over the field of `g` or its
 * quadratic extension.
 *
 * # Safety
 * `g` must be a live handle, `sigma` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum IrrStatus irr_r_sigma_t(const struct IrrPoly *g,
                             const char *sigma,
                             uint32_t t,
                             struct IrrPoly **out);

/**
 * Verdict JSON `{pass, theorem, checks}` for the Moebius power chain with
 * matrix `sigma` and exponent `t`.
 *
 * # Safety
 * `g` must be a live handle, `sigma` a NUL-terminated string and `out_json`
 * a valid pointer.
 */
enum IrrStatus irr_main_theorem_check(const struct IrrPoly *g,
                                      const char *sigma,
                                      uint32_t t,
                                      char **out_json);

/**
 * Iterate a transform given as JSON
 * `{"kind": "general|cohen|mcnay|singer", "q": ..., "sigma"?, "t"?, "c"?, "field_level"?}`
 * and return `{"chain": [...], "report": {...}}` as JSON.
 *
 * # Safety
 * `transform_json` must be a NUL-terminated string, `seed` a live handle and
 * `out_json` a valid pointer.
 */
enum IrrStatus irr_chain_generate(const char *transform_json,
                                  const struct IrrPoly *seed,
                                  uint32_t iterations,
                                  enum IrrVerify verify,
                                  char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IRRCHAIN_H */
