#ifndef HALFSPEC_H
#define HALFSPEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `HS_OK` is zero; the rest mirror the library's error kinds.
typedef enum HsStatus {
  HS_OK = 0,
  HS_NULL_POINTER = 1,
  HS_WINDOW_TOO_WIDE = 2,
  HS_SPECTRUM_HIT = 3,
  HS_POLE_AT_ONE = 4,
  HS_BAD_PARAMETER = 5,
  HS_NOT_HERMITIAN = 6,
  HS_ENDPOINT_ON_SPECTRUM = 7,
  HS_LIPSCHITZ_VIOLATED = 8,
  HS_SUPPORT_EXCEEDS_WINDOW = 9,
  HS_PARSE = 10,
  HS_IO = 11,
  HS_PANIC = 12,
} HsStatus;

// Opaque coefficient sequence on the window `k = -K..K-1`.
typedef struct HsCoeffs HsCoeffs;

// Opaque grid of `N` samples at `x_j = j / N`.
typedef struct HsGrid HsGrid;

typedef struct HsComplex {
  double re;
  double im;
} HsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the message of the last failure on this thread into `buf`
// (NUL-terminated, truncated to `len`). Returns the full message length
// without the terminator, or 0 when there is none.
//
// # Safety
// `buf` must be null or valid for writes of `len` bytes.
size_t hs_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *hs_version(void);

// Creates a grid from `n` samples.
//
// # Safety
// `values` must be valid for reads of `n` values; `out` valid for a write.
enum HsStatus hs_grid_new(const struct HsComplex *values, size_t n, struct HsGrid **out);

// # Safety
// `grid` must be null or a handle from this library, not yet freed.
void hs_grid_free(struct HsGrid *grid);

// Number of samples, or 0 for a null handle.
//
// # Safety
// `grid` must be null or a live handle.
size_t hs_grid_len(const struct HsGrid *grid);

// # Safety
// `grid` must be a live handle and `out` valid for a write.
enum HsStatus hs_grid_get(const struct HsGrid *grid, size_t j, struct HsComplex *out);

// Creates coefficients on the window of half-width `half_width` from
// `2 * half_width` values in ascending `k`.
//
// # Safety
// `values` must be valid for reads of `2 * half_width` values; `out` valid
// for a write.
enum HsStatus hs_coeffs_new(const struct HsComplex *values,
                            size_t half_width,
                            struct HsCoeffs **out);

// # Safety
// `coeffs` must be null or a handle from this library, not yet freed.
void hs_coeffs_free(struct HsCoeffs *coeffs);

// Window half-width `K`, or 0 for a null handle.
//
// # Safety
// `coeffs` must be null or a live handle.
size_t hs_coeffs_half_width(const struct HsCoeffs *coeffs);

// Coefficient at mode `k`.
//
// # Safety
// `coeffs` must be a live handle and `out` valid for a write.
enum HsStatus hs_coeffs_get(const struct HsCoeffs *coeffs, int64_t k, struct HsComplex *out);

// Forward twisted transform onto the window of half-width `half_width`.
//
// # Safety
// `grid` must be a live handle and `out` valid for a write.
enum HsStatus hs_forward(const struct HsGrid *grid, size_t half_width, struct HsCoeffs **out);

// Synthesizes `n` grid samples from coefficients.
//
// # Safety
// `coeffs` must be a live handle and `out` valid for a write.
enum HsStatus hs_inverse(const struct HsCoeffs *coeffs, size_t n, struct HsGrid **out);

// Solves `A u = g` on the window and returns `u` on the input grid.
// `residual` and `antiperiodicity_gap` may be null.
//
// # Safety
// `grid` must be a live handle; pointers must be null or valid for writes
// (`out` must not be null).
enum HsStatus hs_solve_bvp(const struct HsGrid *grid,
                           size_t half_width,
                           struct HsGrid **out,
                           double *residual,
                           double *antiperiodicity_gap);

// `zeta'(0)` of `|A|` and the determinant `exp(-zeta'(0))`.
//
// # Safety
// Both pointers must be valid for writes.
enum HsStatus hs_zeta_determinant(double *deriv_at_zero, double *determinant);

// Hurwitz zeta `zeta(s, a)` with an error estimate (`err` may be null).
//
// # Safety
// `value` must be valid for a write; `err` null or valid for a write.
enum HsStatus hs_hurwitz_zeta(struct HsComplex s, double a, struct HsComplex *value, double *err);

// Heat trace at `t` by direct sum, theta identity and Poisson form.
//
// # Safety
// All three pointers must be valid for writes.
enum HsStatus hs_heat_trace(double t, double *direct, double *theta, double *poisson);

// Spectral flow of `A_K + c t I` over `t` in `[0, 1]`.
//
// # Safety
// `flow` must be valid for a write.
enum HsStatus hs_spectral_flow_scalar(size_t half_width, double c, int64_t *flow);

// Spectral flow of `A_K + c t P_mode` over `t` in `[0, 1]`.
//
// # Safety
// `flow` must be valid for a write.
enum HsStatus hs_spectral_flow_rank_one(size_t half_width, int64_t mode, double c, int64_t *flow);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALFSPEC_H */
