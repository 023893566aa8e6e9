#ifndef WREATH_H
#define WREATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum {
  WREATH_STATUS_OK = 0,
  WREATH_STATUS_NULL_ARGUMENT = 1,
  WREATH_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input text.
   */
  WREATH_STATUS_PARSE = 3,
  /**
   * Well-formed input describing an invalid object (not a Lie algebra, not an ideal, ...).
   */
  WREATH_STATUS_INVALID = 4,
  /**
   * A precondition on degrees or dimensions was not met.
   */
  WREATH_STATUS_PRECONDITION = 5,
  WREATH_STATUS_INTERNAL = 6,
} WreathStatus;

/**
 * A validated Lie algebra.
 */
typedef struct WreathAlgebra WreathAlgebra;

/**
 * An extension `0 → A → C → B → 0` together with a section of `C → B`.
 */
typedef struct WreathExtension WreathExtension;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *wreath_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void wreath_string_free(char *s);

/**
 * Parses and validates an algebra file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
WreathStatus wreath_algebra_from_json(const char *json, WreathAlgebra **out);

/**
 * # Safety
 * `alg` must come from [`wreath_algebra_from_json`] and not have been freed, or be null.
 */
void wreath_algebra_free(WreathAlgebra *alg);

/**
 * Dimension of the algebra; 0 for null.
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
uintptr_t wreath_algebra_dim(const WreathAlgebra *alg);

/**
 * `t_0..t_n` as a JSON array of `"p/q"` strings.
 *
 * # Safety
 * `out` must be writable.
 */
WreathStatus wreath_bernoulli(uintptr_t n, char **out);

/**
 * The fundamental action `d_b` through degree `n`, as a JSON series record.
 * `element` is `"c1,c2,..."`.
 *
 * # Safety
 * `alg` must be a live handle, `element` a NUL-terminated string, `out` writable.
 */
WreathStatus wreath_fundamental_action(const WreathAlgebra *alg,
                                       const char *element,
                                       uintptr_t n,
                                       char **out);

/**
 * Whether the fundamental action is a homomorphism through `check_degree`.
 *
 * # Safety
 * `alg` must be a live handle and `passed` writable.
 */
WreathStatus wreath_verify_fundamental(const WreathAlgebra *alg,
                                       uintptr_t check_degree,
                                       bool *passed);

/**
 * Parses an extension file (algebra, ideal and optional section).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
WreathStatus wreath_extension_from_json(const char *json, WreathExtension **out);

/**
 * # Safety
 * `ext` must come from [`wreath_extension_from_json`] and not have been freed, or be null.
 */
void wreath_extension_free(WreathExtension *ext);

/**
 * The Kaloujnine-Krasner image of `c` through degree `n`, as a JSON
 * element record `{"series": ..., "point": [...]}`.
 *
 * # Safety
 * `ext` must be a live handle, `element` a NUL-terminated string, `out` writable.
 */
WreathStatus wreath_kk_embed(const WreathExtension *ext,
                             const char *element,
                             uintptr_t n,
                             char **out);

/**
 * Whether the Kaloujnine-Krasner map is an injective homomorphism at order
 * `n` (basis pairs plus `trials` seeded random pairs).
 *
 * # Safety
 * `ext` must be a live handle and `passed` writable.
 */
WreathStatus wreath_verify_kk(const WreathExtension *ext,
                              uintptr_t n,
                              uintptr_t trials,
                              uint64_t seed,
                              bool *passed);

/**
 * Projection `p(c)` onto the quotient, as a JSON array of `"p/q"` strings.
 *
 * # Safety
 * `ext` must be a live handle, `element` a NUL-terminated string, `out` writable.
 */
WreathStatus wreath_extension_project(const WreathExtension *ext, const char *element, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WREATH_H */
