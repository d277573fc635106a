#ifndef QSPHERES_H
#define QSPHERES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_UTF8 = 2,
  QS_STATUS_INVALID_Q = 3,
  QS_STATUS_INVALID_PARAM = 4,
  QS_STATUS_DOMAIN = 5,
  QS_STATUS_DIMENSION_MISMATCH = 6,
  QS_STATUS_WRONG_ALGEBRA = 7,
  QS_STATUS_UNBOUND_GENERATOR = 8,
  QS_STATUS_MARGIN_TOO_SMALL = 9,
  QS_STATUS_PARSE = 10,
  QS_STATUS_UNSUPPORTED = 11,
  QS_STATUS_PANIC = 12,
} QsStatus;

/**
 * Opaque session: an algebra, its parameters and the last error message.
 */
typedef struct QsSession QsSession;

/**
 * Worst interior residuals of a verification run.
 */
typedef struct QsVerifyReport {
  double relation;
  double adjoint;
  size_t labels;
} QsVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a session for `algebra` (for example `"podles"`, `"s4q-chiral"`,
 * `"odd"`) at deformation parameter `q`. Other parameters start at
 * `s = 0`, `N = 1/2`, `ℓ = 2`, no perturbation and the algebra's default
 * cutoff. Free the result with [`qs_session_free`].
 *
 * # Safety
 * `algebra` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum QsStatus qs_session_new(const char *algebra, double q, struct QsSession **out);

/**
 * Release a session. Passing null is a no-op.
 *
 * # Safety
 * `session` must come from [`qs_session_new`] and not be used afterwards.
 */
void qs_session_free(struct QsSession *session);

/**
 * Message of the last failure on this session, or an empty string. The
 * pointer stays valid until the next call on the session.
 *
 * # Safety
 * `session` must be null or a live session.
 */
const char *qs_session_last_error(const struct QsSession *session);

/**
 * Set the Podleś parameter `s`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum QsStatus qs_session_set_s(struct QsSession *session, double s);

/**
 * Set the monopole charge `N`, given as `2N`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum QsStatus qs_session_set_charge_twice(struct QsSession *session, int32_t twice);

/**
 * Set the rank `ℓ` of the odd sphere `S^{2ℓ+1}_q`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum QsStatus qs_session_set_ell(struct QsSession *session, size_t ell);

/**
 * Set the truncation cutoff `Λ`, given as `2Λ`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum QsStatus qs_session_set_cutoff_twice(struct QsSession *session, int32_t twice);

/**
 * Set the relative perturbation applied by [`qs_verify`].
 *
 * # Safety
 * `session` must be a live session.
 */
enum QsStatus qs_session_set_perturb(struct QsSession *session, double perturb);

/**
 * Check relations and adjoint consistency on the truncated basis.
 *
 * # Safety
 * `session` must be a live session and `out` a valid pointer.
 */
enum QsStatus qs_verify(struct QsSession *session, struct QsVerifyReport *out);

/**
 * Truncated Fredholm index: the Podleś pairing with the projection of
 * charge `N`, the chiral index on `S^4_q`, or the Fock-space index.
 *
 * # Safety
 * `session` must be a live session and `out` a valid pointer.
 */
enum QsStatus qs_index(struct QsSession *session, double *out);

/**
 * Truncated twisted index: `sign(N)[2|N|]` on the Podleś sphere, the
 * twisted pairing on `S^4_q`.
 *
 * # Safety
 * `session` must be a live session and `out` a valid pointer.
 */
enum QsStatus qs_qindex(struct QsSession *session, double *out);

/**
 * Haar state of a word in the `S^4_q` generators, computed in the GNS
 * representation.
 *
 * # Safety
 * `session` must be a live session, `word` a valid NUL-terminated string
 * and `out` a valid pointer.
 */
enum QsStatus qs_haar(struct QsSession *session, const char *word, double *out);

/**
 * Noncommutative integral of a word in `z_1, …, z_{ℓ+1}` on the odd sphere
 * of the session's rank.
 *
 * # Safety
 * `session` must be a live session, `word` a valid NUL-terminated string
 * and `re`, `im` valid pointers.
 */
enum QsStatus qs_nc_integral(struct QsSession *session, const char *word, double *re, double *im);

/**
 * Multiplicity `μ_k` of the eigenvalue `k` of `|D|` on `S^{2ℓ+1}_q`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QsStatus qs_odd_multiplicity(size_t ell, uint64_t k, uint64_t *out);

/**
 * Static description of a status code.
 */
const char *qs_status_message(enum QsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSPHERES_H */
