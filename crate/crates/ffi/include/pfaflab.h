#ifndef PFAFLAB_H
#define PFAFLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PflStatus {
  PFL_STATUS_OK = 0,
  PFL_STATUS_NULL_POINTER = 1,
  PFL_STATUS_INVALID_ARGUMENT = 2,
  PFL_STATUS_BOUND_EXCEEDED = 3,
  PFL_STATUS_IDENTITY_FAILURE = 4,
  PFL_STATUS_IO = 5,
  PFL_STATUS_PANIC = 6,
} PflStatus;

/**
 * A symmetric Temperley-Lieb diagram.
 */
typedef struct PflDiagram PflDiagram;

/**
 * An exact polynomial.
 */
typedef struct PflPolynomial PflPolynomial;

/**
 * A skew-symmetric array of polynomials.
 */
typedef struct PflSkewArray PflSkewArray;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *pfl_last_error(void);

/**
 * Library version, static storage.
 */
const char *pfl_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pfl_string_free(char *s);

/**
 * The generic `2n × 2n` skew array with entries `a[i,j]`.
 */
enum PflStatus pfl_skew_symbolic(size_t n, struct PflSkewArray **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void pfl_skew_free(struct PflSkewArray *a);

/**
 * Parses a diagram key such as `V[(1,4)(2,3)]` on `2n` points.
 *
 * # Safety
 * `key` must be a NUL-terminated string; `out` must point to writable storage.
 */
enum PflStatus pfl_diagram_parse(size_t n, const char *key, struct PflDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from this library, not yet freed.
 */
void pfl_diagram_free(struct PflDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle; `out` must point to writable storage.
 */
enum PflStatus pfl_diagram_key(const struct PflDiagram *d, char **out);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
bool pfl_diagram_is_even(const struct PflDiagram *d);

/**
 * Number of diagrams on `2n` points, or of the even ones.
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum PflStatus pfl_count_diagrams(size_t n, bool even_only, size_t *out);

/**
 * `Pfaf'_D(A)`, or `Pfaf_D(A)` when `tl` is set.
 *
 * # Safety
 * `d` and `a` must be live handles; `out` must point to writable storage.
 */
enum PflStatus pfl_pfaffinant(const struct PflDiagram *d,
                              const struct PflSkewArray *a,
                              bool tl,
                              struct PflPolynomial **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must point to writable storage.
 */
enum PflStatus pfl_pfaffian(const struct PflSkewArray *a, struct PflPolynomial **out);

/**
 * `Q_{λ/μ}` in `k` variables for a shape such as `(3,1)/(2)`.
 *
 * # Safety
 * `shape` must be a NUL-terminated string; `out` must point to writable storage.
 */
enum PflStatus pfl_schur_q(const char *shape, size_t k, struct PflPolynomial **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must point to writable storage.
 */
enum PflStatus pfl_polynomial_to_string(const struct PflPolynomial *p, char **out);

/**
 * # Safety
 * `p` and `q` must be live handles.
 */
bool pfl_polynomial_equal(const struct PflPolynomial *p, const struct PflPolynomial *q);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void pfl_polynomial_free(struct PflPolynomial *p);

/**
 * Runs a registered check (`pfaflab list`); `n` and `bound` of 0 take the
 * check's defaults. Writes the JSON report to `report` when it is not null.
 * Returns `IdentityFailure` when some case fails.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `report` must be null or point to
 * writable storage.
 */
enum PflStatus pfl_verify(const char *id, size_t n, size_t bound, char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PFAFLAB_H */
