#ifndef DIAGRAM_GROWTH_H
#define DIAGRAM_GROWTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DgStatus {
  DG_STATUS_OK = 0,
  DG_STATUS_NULL_POINTER = 1,
  DG_STATUS_INVALID_ARGUMENT = 2,
  DG_STATUS_BUFFER_TOO_SMALL = 3,
  DG_STATUS_GUARD_EXCEEDED = 4,
  DG_STATUS_INTERNAL = 5,
} DgStatus;

// Computation path for `dg_sequence_new`.
typedef enum DgVia {
  DG_VIA_CLOSED_FORM = 0,
  DG_VIA_EGF = 1,
  DG_VIA_ORACLE = 2,
} DgVia;

typedef struct DgFamily DgFamily;

typedef struct DgSequence DgSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *dg_status_message(enum DgStatus status);

// Creates a family from its kebab-case name. `k` is read only for `cob`
// and `q` only for `glfq`.
//
// # Safety
// `name` must be a valid NUL-terminated string and `out` a valid pointer.
enum DgStatus dg_family_new(const char *name, uint32_t k, uint64_t q, struct DgFamily **out);

// # Safety
// `family` must be null or a handle from `dg_family_new` not yet freed.
void dg_family_free(struct DgFamily *family);

// Writes the family's display name, e.g. `cob(k=2)`.
//
// # Safety
// `family` must be a live handle; `buf` must hold `len` bytes; `needed`
// must be valid.
enum DgStatus dg_family_name(const struct DgFamily *family, char *buf, size_t len, size_t *needed);

// Exact `b_n` as a decimal string.
//
// # Safety
// As for `dg_family_name`.
enum DgStatus dg_bn(const struct DgFamily *family, size_t n, char *buf, size_t len, size_t *needed);

// `ln b_n` from the exact value.
//
// # Safety
// `family` must be a live handle and `out` valid.
enum DgStatus dg_ln_bn(const struct DgFamily *family, size_t n, double *out);

// Computes `b_0..=b_{n_max}` along the chosen path.
//
// # Safety
// `family` must be a live handle and `out` valid.
enum DgStatus dg_sequence_new(const struct DgFamily *family,
                              size_t n_max,
                              enum DgVia via,
                              struct DgSequence **out);

// Number of terms, or 0 for a null handle.
//
// # Safety
// `seq` must be null or a live handle.
size_t dg_sequence_len(const struct DgSequence *seq);

// Term `i` as a decimal string.
//
// # Safety
// As for `dg_family_name`, with a live sequence handle.
enum DgStatus dg_sequence_get(const struct DgSequence *seq,
                              size_t i,
                              char *buf,
                              size_t len,
                              size_t *needed);

// # Safety
// `seq` must be null or a handle from `dg_sequence_new` not yet freed.
void dg_sequence_free(struct DgSequence *seq);

// Principal-branch Lambert W for `x >= 0`.
//
// # Safety
// `out` must be valid.
enum DgStatus dg_lambert_w(double x, double *out);

// `ln` of the asymptotic approximant for `b_n`; `*is_full` is set to 1
// for a full-`b_n` formula and 0 for the root-growth fallback.
//
// # Safety
// `family` must be a live handle; `out` and `is_full` valid.
enum DgStatus dg_log_bn_estimate(const struct DgFamily *family,
                                 size_t n,
                                 double *out,
                                 int32_t *is_full);

// Target for `b_n^(1/n)`.
//
// # Safety
// `family` must be a live handle and `out` valid.
enum DgStatus dg_root_target(const struct DgFamily *family,
                             size_t n,
                             bool partition_correction,
                             double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIAGRAM_GROWTH_H */
