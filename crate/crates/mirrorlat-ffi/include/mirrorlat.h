/* Generated by cbindgen from crates/mirrorlat-ffi; do not edit. */

#ifndef MIRRORLAT_H
#define MIRRORLAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MlStatus {
  ML_STATUS_OK = 0,
  ML_STATUS_NULL_POINTER = 1,
  ML_STATUS_INVALID_UTF8 = 2,
  ML_STATUS_UNSUPPORTED_TYPE = 3,
  ML_STATUS_PARSE_RATIONAL = 4,
  ML_STATUS_INVALID_ARGUMENT = 5,
  ML_STATUS_INVALID_NODE = 6,
  ML_STATUS_SPECIALIZATION_DOMAIN = 7,
  ML_STATUS_SINGULAR_FORM = 8,
  ML_STATUS_SPECTRAL_INCONSISTENCY = 9,
  ML_STATUS_DOMAIN_VIOLATION = 10,
  ML_STATUS_INTERNAL = 11,
} MlStatus;

typedef enum MlFormat {
  ML_FORMAT_JSON = 0,
  ML_FORMAT_CSV = 1,
  ML_FORMAT_MD = 2,
} MlFormat;

// Opaque Hermitian form handle.
typedef struct MlGram MlGram;

// Opaque root system handle.
typedef struct MlRootSystem MlRootSystem;

typedef struct MlSignature {
  size_t pos;
  size_t neg;
  size_t zero;
} MlSignature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the next call.
const char *ml_last_error(void);

// Library version as a static string.
const char *ml_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void ml_string_free(char *s);

// Builds the root system of type `family` (an ASCII letter) and rank `rank`.
//
// # Safety
// `out` must be a valid pointer.
enum MlStatus ml_root_system_new(char family, size_t rank, struct MlRootSystem **out);

// # Safety
// `rs` must be null or a handle from [`ml_root_system_new`].
void ml_root_system_free(struct MlRootSystem *rs);

// Rank, or 0 for a null handle.
//
// # Safety
// `rs` must be null or a live handle.
size_t ml_root_system_rank(const struct MlRootSystem *rs);

// Number of positive roots, or 0 for a null handle.
//
// # Safety
// `rs` must be null or a live handle.
size_t ml_root_system_positive_roots(const struct MlRootSystem *rs);

// Exact flatness check at `(k, k')`; `kp` may be null for `k' = 0`.
//
// # Safety
// Pointers must be valid; strings nul-terminated.
enum MlStatus ml_flatness_check(const struct MlRootSystem *rs,
                                const char *k,
                                const char *kp,
                                bool *all_hold);

// Boundary residue spectrum at the fundamental coweight `node` (1-based), as JSON.
//
// # Safety
// Pointers must be valid; free `json` with [`ml_string_free`].
enum MlStatus ml_boundary_spectrum_json(const struct MlRootSystem *rs, size_t node, char **json);

// Whether the Schwarz conditions hold at `(k, k')`.
//
// # Safety
// Pointers must be valid; strings nul-terminated.
enum MlStatus ml_schwarz_satisfied(const struct MlRootSystem *rs,
                                   const char *k,
                                   const char *kp,
                                   bool *satisfied);

// Membership of `(k, k')` in the hyperbolic region.
//
// # Safety
// Pointers must be valid; strings nul-terminated.
enum MlStatus ml_in_hyperbolic_region(const struct MlRootSystem *rs,
                                      const char *k,
                                      const char *kp,
                                      bool *inside);

// Ball-quotient parameters of this type as a JSON array.
//
// # Safety
// Pointers must be valid; free `json` with [`ml_string_free`].
enum MlStatus ml_enumerate_json(const struct MlRootSystem *rs, char **json);

// Hermitian form `h(κ)` for `κ` in the restricted region.
//
// # Safety
// Pointers must be valid; free the handle with [`ml_gram_free`].
enum MlStatus ml_gram_new(const struct MlRootSystem *rs,
                          const char *k,
                          const char *kp,
                          struct MlGram **out);

// # Safety
// `g` must be null or a handle from [`ml_gram_new`].
void ml_gram_free(struct MlGram *g);

// Matrix dimension `n + 1`, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t ml_gram_dim(const struct MlGram *g);

// Entry `(row, col)` as real and imaginary parts.
//
// # Safety
// Pointers must be valid.
enum MlStatus ml_gram_entry(const struct MlGram *g, size_t row, size_t col, double *re, double *im);

// Numeric determinant.
//
// # Safety
// Pointers must be valid.
enum MlStatus ml_gram_det(const struct MlGram *g, double *det);

// Signature of `h(κ)`.
//
// # Safety
// Pointers must be valid.
enum MlStatus ml_gram_signature(const struct MlGram *g, struct MlSignature *out);

// Regenerates table 1, 2 or 3.
//
// # Safety
// `out` must be valid; free the string with [`ml_string_free`].
enum MlStatus ml_table(uint8_t which, enum MlFormat format, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIRRORLAT_H */
