#ifndef IFDR_H
#define IFDR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IfdrStatus {
  IFDR_STATUS_OK = 0,
  IFDR_STATUS_INVALID_ARGUMENT = 1,
  IFDR_STATUS_DATASET = 2,
  IFDR_STATUS_DIVERGENCE = 3,
  IFDR_STATUS_NULL_POINTER = 4,
  IFDR_STATUS_NUMERICAL = 5,
  IFDR_STATUS_OUT_OF_RANGE = 6,
  IFDR_STATUS_PANIC = 7,
} IfdrStatus;

typedef enum IfdrInertia {
  IFDR_INERTIA_ZERO = 0,
  IFDR_INERTIA_CONSTANT = 1,
  IFDR_INERTIA_RESTART = 2,
  IFDR_INERTIA_NESTEROV_THETA = 3,
  IFDR_INERTIA_NEGATIVE_CONSTANT = 4,
} IfdrInertia;

/**
 * Opaque problem handle.
 */
typedef struct IfdrProblem IfdrProblem;

/**
 * Opaque run result handle.
 */
typedef struct IfdrResult IfdrResult;

typedef struct IfdrParams {
  double gamma;
  double lambda;
  /**
   * One of the `IfdrInertia` values.
   */
  uint32_t inertia;
  /**
   * `tau` for the constant schedules, `t` for the theta schedule.
   */
  double inertia_value;
  size_t max_iters;
  /**
   * Relative step-norm tolerance; 0 disables early stopping.
   */
  double stop_tol;
  bool allow_negative_inertia;
} IfdrParams;

typedef struct IfdrTraceRecord {
  size_t iter;
  double objective;
  double step_norm;
  double fixed_point_residual;
  double feas_f;
  double feas_g;
  /**
   * NaN on the first iteration.
   */
  double e_n;
  bool restarted;
} IfdrTraceRecord;

typedef struct IfdrCertificate {
  bool valid;
  double gamma;
  double lipschitz;
  double tau;
  double lambda;
  double kappa;
  double delta;
  double sigma;
  double alpha;
  double lambda_upper;
} IfdrCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t ifdr_last_error(char *buf, size_t len);

/**
 * Nearest doubly nonnegative matrix to the symmetric `d x d` row-major `z`.
 *
 * # Safety
 * `z` must be valid for `d * d` reads; `out` must be writable.
 */
enum IfdrStatus ifdr_problem_dnn(const double *z, size_t d, struct IfdrProblem **out);

/**
 * Slow-convergence example with `blocks` rotated planes and quadratic
 * weight `rho`. The default start is the slowest mode.
 *
 * # Safety
 * `out` must be writable.
 */
enum IfdrStatus ifdr_problem_pathological(size_t blocks, double rho, struct IfdrProblem **out);

/**
 * Tracking portfolio on `days x assets` row-major returns, all used for training.
 *
 * # Safety
 * `returns` must be valid for `days * assets` reads; `out` must be writable.
 */
enum IfdrStatus ifdr_problem_markowitz(const double *returns,
                                       size_t days,
                                       size_t assets,
                                       struct IfdrProblem **out);

/**
 * # Safety
 * `p` must be null or a live handle from `ifdr_problem_*`.
 */
size_t ifdr_problem_dimension(const struct IfdrProblem *p);

/**
 * Lipschitz constant of the smooth term; NaN for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle from `ifdr_problem_*`.
 */
double ifdr_problem_lipschitz(const struct IfdrProblem *p);

/**
 * # Safety
 * `p` must be null or a handle from `ifdr_problem_*` not yet freed.
 */
void ifdr_problem_free(struct IfdrProblem *p);

/**
 * Runs the solver. `x0` may be null (problem default start) or hold
 * `x0_len == dimension` values. Restart inertia uses adaptive restart.
 *
 * # Safety
 * `p` and `params` must be valid; `x0` valid for `x0_len` reads when non-null;
 * `out` must be writable.
 */
enum IfdrStatus ifdr_run(const struct IfdrProblem *p,
                         const struct IfdrParams *params,
                         const double *x0,
                         size_t x0_len,
                         struct IfdrResult **out);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t ifdr_result_iterations(const struct IfdrResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t ifdr_result_restarts(const struct IfdrResult *r);

/**
 * Copies the final `x_n` into `buf`, which must hold the problem dimension.
 *
 * # Safety
 * `r` must be a live result handle; `buf` valid for `len` writes.
 */
enum IfdrStatus ifdr_result_solution(const struct IfdrResult *r, double *buf, size_t len);

/**
 * Trace row `index` (0-based).
 *
 * # Safety
 * `r` must be a live result handle; `out` must be writable.
 */
enum IfdrStatus ifdr_result_trace(const struct IfdrResult *r,
                                  size_t index,
                                  struct IfdrTraceRecord *out);

/**
 * # Safety
 * `r` must be null or a result handle not yet freed.
 */
void ifdr_result_free(struct IfdrResult *r);

/**
 * Searches for convergence witnesses for fixed `(gamma, tau, lambda)`.
 * Returns `Ok` whether or not the parameters are valid; see `out->valid`.
 *
 * # Safety
 * `out` must be writable.
 */
enum IfdrStatus ifdr_validate(double gamma,
                              double lipschitz,
                              double tau,
                              double lambda,
                              struct IfdrCertificate *out);

/**
 * Largest constant inertia certified for `(gamma, lambda)`; 0 when even
 * `tau = 0` fails, NaN for a non-positive `lipschitz`.
 */
double ifdr_max_fixed_tau(double gamma, double lipschitz, double lambda);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IFDR_H */
