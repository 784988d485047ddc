#ifndef TOWERCALC_H
#define TOWERCALC_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes. `TC_STATUS_OK` is zero; the others mirror the library's
// error kinds plus the ABI-level failures.
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  TC_STATUS_INVALID_PRIME = 3,
  TC_STATUS_PRIME_MISMATCH = 4,
  TC_STATUS_SCHEMA = 5,
  TC_STATUS_PRECONDITION = 6,
  TC_STATUS_NOT_PRIME = 7,
  TC_STATUS_BOUND_EXCEEDED = 8,
  TC_STATUS_NON_TORSION = 9,
  TC_STATUS_NOT_A_DIFFERENTIAL = 10,
  TC_STATUS_PANIC = 11,
} TcStatus;

// Opaque handle to a formal wedge of spheres and Moore spectra.
typedef struct TcComplex TcComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *tc_last_error_message(void);

// # Safety
// `out` must be writable.
enum TcStatus tc_complex_zero(uint32_t prime, struct TcComplex **out);

// # Safety
// `out` must be writable.
enum TcStatus tc_complex_sphere(uint32_t prime, int64_t dim, struct TcComplex **out);

// `M^dim = S^dim / p`.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_complex_moore(uint32_t prime, int64_t dim, struct TcComplex **out);

// Parses the JSON wire form and checks it against `prime`.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum TcStatus tc_complex_from_json(uint32_t prime, const char *json, struct TcComplex **out);

// # Safety
// `c` must be a live handle; `out` must be writable. Free the result with
// [`tc_string_free`].
enum TcStatus tc_complex_to_json(const struct TcComplex *c, char **out);

// Human-readable form such as `S^3 ∨ 2·M^9`.
//
// # Safety
// As for [`tc_complex_to_json`].
enum TcStatus tc_complex_to_string(const struct TcComplex *c, char **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TcStatus tc_complex_wedge(const struct TcComplex *a,
                               const struct TcComplex *b,
                               struct TcComplex **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TcStatus tc_complex_smash(const struct TcComplex *a,
                               const struct TcComplex *b,
                               struct TcComplex **out);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum TcStatus tc_complex_suspend(const struct TcComplex *c, int64_t shift, struct TcComplex **out);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum TcStatus tc_complex_smash_power(const struct TcComplex *c, uint32_t k, struct TcComplex **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TcStatus tc_complex_equal(const struct TcComplex *a, const struct TcComplex *b, bool *out);

// `χ` of a wedge of Moore spectra; fails with `TC_STATUS_NON_TORSION` if a
// sphere is present.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum TcStatus tc_complex_euler(const struct TcComplex *c, int64_t *out);

// Releases a handle. Null is ignored.
//
// # Safety
// `c` must come from this library and not be used afterwards.
void tc_complex_free(struct TcComplex *c);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void tc_string_free(char *s);

// Dimension of the free Lie algebra in the given multidegree.
//
// # Safety
// `degree` must point to `len` values; `out` must be writable.
enum TcStatus tc_witt_count(const uint32_t *degree, uintptr_t len, uint64_t *out);

// K-theoretic Euler characteristic of the n-th layer of `M^ell`, for prime
// `n > 2p`.
//
// # Safety
// `out` must be writable.
enum TcStatus tc_layer_euler(int64_t ell, uint32_t n, uint32_t prime, int64_t *out);

// Reduced Betti numbers of the partition complex as a JSON object mapping
// degree to rank. `field` is `"Q"` or `"F<q>"`.
//
// # Safety
// `field` must be a nul-terminated string; `out` must be writable. Free the
// result with [`tc_string_free`].
enum TcStatus tc_partition_betti_json(uint32_t n, const char *field, char **out);

// Library version as a static nul-terminated string.
const char *tc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOWERCALC_H */
