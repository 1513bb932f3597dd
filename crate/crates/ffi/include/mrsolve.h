#ifndef MRSOLVE_H
#define MRSOLVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum MrStatus {
  MR_STATUS_OK = 0,
  MR_STATUS_NULL_POINTER = 1,
  MR_STATUS_DOMAIN = 2,
  MR_STATUS_NO_BOUND_STATE = 3,
  MR_STATUS_NUMERICAL = 4,
  MR_STATUS_INVALID_LABEL = 5,
  MR_STATUS_BUFFER_TOO_SMALL = 6,
  MR_STATUS_PANIC = 99,
} MrStatus;

// Potential parameters together with a unit system.
typedef struct MrModel MrModel;

// A sampled, normalized radial wavefunction.
typedef struct MrRadialFunction MrRadialFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *mr_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *mr_version(void);

// Model in atomic units (`ħ = μ = 1`, lengths in bohr).
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum MrStatus mr_model_new_atomic(double strength,
                                  double alpha,
                                  double range,
                                  struct MrModel **out);

// Model in eV and Å for reduced mass `mu_amu`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum MrStatus mr_model_new_molecular(double strength,
                                     double alpha,
                                     double range_angstrom,
                                     double mu_amu,
                                     struct MrModel **out);

// # Safety
// `model` must come from an `mr_model_new_*` call and not be used again.
void mr_model_free(struct MrModel *model);

// Parse a label such as `"2p"` into radial and orbital numbers.
//
// # Safety
// `label` must be a NUL-terminated string; `n` and `l` must be writable.
enum MrStatus mr_state_from_label(const char *label, uint32_t *n, uint32_t *l);

// Closed-form energy of state `(n, l)`.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum MrStatus mr_energy(const struct MrModel *model, uint32_t n, uint32_t l, double *out);

// Dimensionless decay parameter `ε` of state `(n, l)`.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum MrStatus mr_epsilon(const struct MrModel *model, uint32_t n, uint32_t l, double *out);

// Strength `A` at which level `(n, l)` reaches zero energy.
//
// # Safety
// `out` must be writable.
enum MrStatus mr_critical_coupling(uint32_t n, uint32_t l, double alpha, double *out);

// Potential `V(r)`.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum MrStatus mr_potential(const struct MrModel *model, double r, double *out);

// Numerov eigenvalue with the exact (`exact != 0`) or approximated
// centrifugal term, bracketed from the closed form.
//
// # Safety
// `model` must be a live handle; `out` must be writable.
enum MrStatus mr_numerov_eigenvalue(const struct MrModel *model,
                                    uint32_t n,
                                    uint32_t l,
                                    int32_t exact,
                                    double *out);

// Sample the normalized radial function of `(n, l)` at `len` radii.
//
// # Safety
// `model` must be a live handle, `grid` must point to `len` doubles and
// `out` must be writable.
enum MrStatus mr_wavefunction_new(const struct MrModel *model,
                                  uint32_t n,
                                  uint32_t l,
                                  const double *grid,
                                  uintptr_t len,
                                  struct MrRadialFunction **out);

// # Safety
// `f` must come from `mr_wavefunction_new` and not be used again.
void mr_wavefunction_free(struct MrRadialFunction *f);

// Number of samples; 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
uintptr_t mr_wavefunction_len(const struct MrRadialFunction *f);

// Copy the samples into `buf`, which must hold at least `len` values.
//
// # Safety
// `f` must be a live handle and `buf` must point to `cap` writable doubles.
enum MrStatus mr_wavefunction_values(const struct MrRadialFunction *f, double *buf, uintptr_t cap);

// Normalization constant; `*closed_form` is set to 1 if it came from the
// closed double sum and 0 if from quadrature.
//
// # Safety
// `f` must be a live handle; `norm` must be writable; `closed_form` may be null.
enum MrStatus mr_wavefunction_norm(const struct MrRadialFunction *f,
                                   double *norm,
                                   int32_t *closed_form);

// Sign changes across the sampled grid.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum MrStatus mr_wavefunction_nodes(const struct MrRadialFunction *f, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MRSOLVE_H */
