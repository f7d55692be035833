#ifndef QUATFLAG_H
#define QUATFLAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QfStatus {
  QF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QF_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed input: bad UTF-8, unknown suite name, unparsable value.
   */
  QF_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A mathematical precondition failed (rank, termination, pole, ...).
   */
  QF_STATUS_DOMAIN_ERROR = 3,
  /**
   * The caller's buffer is too small; the required size was written.
   */
  QF_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * Index past the end of a handle's contents.
   */
  QF_STATUS_OUT_OF_RANGE = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  QF_STATUS_PANIC = 6,
} QfStatus;

/**
 * Opaque radial solution on `S^4`.
 */
typedef struct QfRadial QfRadial;

/**
 * Opaque verification report.
 */
typedef struct QfReport QfReport;

/**
 * Opaque root system of `sp(n)`.
 */
typedef struct QfRootSystem QfRootSystem;

/**
 * Quaternion `w + x i + y j + z k`.
 */
typedef struct QfQuaternion {
  double w;
  double x;
  double y;
  double z;
} QfQuaternion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qf_version(void);

/**
 * Message for the last failure on this thread. Same size protocol as the
 * other string getters.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes or null; `needed` null or writable.
 */
enum QfStatus qf_last_error(char *buf, uintptr_t cap, uintptr_t *needed);

/**
 * Hamilton product `a b`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QfStatus qf_quaternion_mul(struct QfQuaternion a,
                                struct QfQuaternion b,
                                struct QfQuaternion *out);

/**
 * 2x2 complex image of `q`, row-major, as `re, im` pairs (8 doubles).
 *
 * # Safety
 * `out` must be writable for 8 doubles.
 */
enum QfStatus qf_quaternion_to_m2c(struct QfQuaternion q, double *out);

/**
 * Roots of `sp(n)`, `n >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QfStatus qf_root_system_new(uintptr_t n, struct QfRootSystem **out);

/**
 * Number of roots; 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or a live handle.
 */
uintptr_t qf_root_system_len(const struct QfRootSystem *rs);

/**
 * Rank `n`, which is also the length of each root; 0 for a null handle.
 *
 * # Safety
 * `rs` must be null or a live handle.
 */
uintptr_t qf_root_system_rank(const struct QfRootSystem *rs);

/**
 * Coefficients of root `index` in the `L` basis, written to `out[0..rank]`.
 *
 * # Safety
 * `rs` must be a live handle; `out` writable for `cap` ints.
 */
enum QfStatus qf_root_system_get(const struct QfRootSystem *rs,
                                 uintptr_t index,
                                 int32_t *out,
                                 uintptr_t cap);

/**
 * # Safety
 * `rs` must be null or a handle from [`qf_root_system_new`], not yet freed.
 */
void qf_root_system_free(struct QfRootSystem *rs);

/**
 * The closed-form zero mode `f0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QfStatus qf_radial_f0(struct QfRadial **out);

/**
 * Terminating series solution with `l = two_ell / 2` and `N = n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QfStatus qf_radial_g_ell(uint32_t two_ell, uint32_t n, struct QfRadial **out);

/**
 * Value at polar angle `omega`.
 *
 * # Safety
 * `r` must be a live handle; `out` writable.
 */
enum QfStatus qf_radial_value(const struct QfRadial *r, double omega, double *out);

/**
 * Normalized residual of the radial Laplace-Beltrami equation at `omega`.
 *
 * # Safety
 * `r` must be a live handle; `out` writable.
 */
enum QfStatus qf_radial_residual(const struct QfRadial *r, double omega, double *out);

/**
 * `theta^2` of the solution; 0 for `f0`.
 *
 * # Safety
 * `r` must be a live handle; `out` writable.
 */
enum QfStatus qf_radial_theta_sq(const struct QfRadial *r, double *out);

/**
 * # Safety
 * `r` must be null or a handle from a `qf_radial_*` constructor, not yet freed.
 */
void qf_radial_free(struct QfRadial *r);

/**
 * Run a verification suite ("all", "coset", "forms", "liealg", "s4", "em",
 * "dynamics", "roots"). `trials == 0` selects the default.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `out` writable.
 */
enum QfStatus qf_verify_run(const char *suite,
                            uint64_t seed,
                            uintptr_t trials,
                            struct QfReport **out);

/**
 * 1 if every check passed, 0 otherwise or for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
int32_t qf_report_passed(const struct QfReport *r);

/**
 * Total number of checks across suites.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
uintptr_t qf_report_check_count(const struct QfReport *r);

/**
 * The report as compact JSON. Pass a null buffer to query the size.
 *
 * # Safety
 * `r` must be a live handle; `buf` valid for `cap` bytes or null; `needed`
 * null or writable.
 */
enum QfStatus qf_report_json(const struct QfReport *r, char *buf, uintptr_t cap, uintptr_t *needed);

/**
 * # Safety
 * `r` must be null or a handle from [`qf_verify_run`], not yet freed.
 */
void qf_report_free(struct QfReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUATFLAG_H */
