#ifndef OCTOMA_H
#define OCTOMA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OctomaBackend {
  OCTOMA_BACKEND_EXACT = 0,
  OCTOMA_BACKEND_FLOAT = 1,
} OctomaBackend;

typedef enum OctomaStatus {
  OCTOMA_STATUS_OK = 0,
  OCTOMA_STATUS_NULL_POINTER = 1,
  OCTOMA_STATUS_INVALID_UTF8 = 2,
  OCTOMA_STATUS_PARSE = 3,
  OCTOMA_STATUS_CONFIG = 4,
  OCTOMA_STATUS_NOT_POSITIVE_DEFINITE = 5,
  OCTOMA_STATUS_MAX_ITERATIONS = 6,
  OCTOMA_STATUS_SINGULAR_SYSTEM = 7,
  OCTOMA_STATUS_DOMAIN = 8,
  OCTOMA_STATUS_UNKNOWN_SUITE = 9,
  OCTOMA_STATUS_PANIC = 10,
} OctomaStatus;

/**
 * A Hermitian 2×2 octonionic matrix of polynomials.
 */
typedef struct OctomaHermPoly OctomaHermPoly;

/**
 * A parsed solver configuration.
 */
typedef struct OctomaMaConfig OctomaMaConfig;

/**
 * A polynomial in the 16 real coordinates `x1_0..x1_7, x2_0..x2_7`.
 */
typedef struct OctomaPoly OctomaPoly;

/**
 * An octonion in double precision, basis `1, e1, ..., e7`.
 */
typedef struct OctomaOctonion {
  double c[8];
} OctomaOctonion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library; valid until the next call.
 */
const char *octoma_last_error(void);

/**
 * Library version, static.
 */
const char *octoma_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void octoma_string_free(char *s);

struct OctomaOctonion octoma_octonion_mul(struct OctomaOctonion a, struct OctomaOctonion b);

struct OctomaOctonion octoma_octonion_conj(struct OctomaOctonion a);

double octoma_octonion_norm_sq(struct OctomaOctonion a);

/**
 * Determinant `ab − |q|²` of the Hermitian matrix `[[a, q], [q*, b]]`.
 */
double octoma_herm_det(double a, double b, struct OctomaOctonion q);

/**
 * Parses a polynomial; `#` starts a comment.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum OctomaStatus octoma_poly_parse(const char *src, struct OctomaPoly **out);

/**
 * # Safety
 * `p` must be null or a live handle from [`octoma_poly_parse`].
 */
void octoma_poly_free(struct OctomaPoly *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum OctomaStatus octoma_poly_to_string(const struct OctomaPoly *p, char **out);

/**
 * Value at a point of `ℝ¹⁶` (`x` has 16 entries).
 *
 * # Safety
 * `p` must be a live handle, `x` must point to 16 doubles and `out` be writable.
 */
enum OctomaStatus octoma_poly_eval(const struct OctomaPoly *p, const double *x, double *out);

/**
 * Octonionic Hessian of a polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum OctomaStatus octoma_poly_hessian(const struct OctomaPoly *p, struct OctomaHermPoly **out);

/**
 * Parses `label: polynomial` lines with labels `d1 d2 q0..q7`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum OctomaStatus octoma_herm_poly_parse(const char *src, struct OctomaHermPoly **out);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
void octoma_herm_poly_free(struct OctomaHermPoly *h);

/**
 * Text in the format read by [`octoma_herm_poly_parse`].
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum OctomaStatus octoma_herm_poly_to_string(const struct OctomaHermPoly *h, char **out);

/**
 * Whether the matrix is a closed current: both octonionic residuals and
 * all 16 scalar residuals vanish.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum OctomaStatus octoma_herm_poly_is_closed(const struct OctomaHermPoly *h, bool *out);

/**
 * Whether the generators in `src` (matrix text format) span the syzygy
 * module of the ten quadrics.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum OctomaStatus octoma_syzygy_check(const char *src, bool *out);

/**
 * Parses a solver configuration (JSON). `nodal_file` is not accepted here;
 * pass nodal values inline as `"f": {"nodal": [...]}`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum OctomaStatus octoma_ma_config_parse(const char *src, struct OctomaMaConfig **out);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
void octoma_ma_config_free(struct OctomaMaConfig *c);

/**
 * Runs the Newton solver; on success `out` receives the solve report as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum OctomaStatus octoma_ma_solve(const struct OctomaMaConfig *c, char **out);

/**
 * Runs one property suite. `count` of 0 selects the suite's default size.
 * `out` receives the suite result as JSON; `passed` whether it had no failures.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `passed` and `out` writable.
 */
enum OctomaStatus octoma_verify_suite(const char *name,
                                      uint64_t seed,
                                      size_t count,
                                      enum OctomaBackend backend,
                                      bool *passed,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCTOMA_H */
