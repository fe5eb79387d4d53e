#ifndef RMPS_H
#define RMPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum {
  RMPS_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  RMPS_STATUS_NULL_POINTER = 1,
  /*
   An argument is malformed: bad UTF-8, wrong length, unknown mode or
   parameter name, a start point outside the box, and so on.
   */
  RMPS_STATUS_INVALID_ARGUMENT = 2,
  /*
   Tuning parameters failed validation.
   */
  RMPS_STATUS_INVALID_PARAMS = 3,
  /*
   The objective returned NaN or an infinity.
   */
  RMPS_STATUS_NON_FINITE_OBJECTIVE = 4,
  /*
   No benchmark with that name, dimension or suite.
   */
  RMPS_STATUS_UNKNOWN_BENCHMARK = 5,
  /*
   The output buffer is shorter than the data to copy.
   */
  RMPS_STATUS_BUFFER_TOO_SMALL = 6,
  /*
   An internal error. The handle arguments remain valid.
   */
  RMPS_STATUS_INTERNAL = 7,
} RmpsStatus;

/*
 Search mode selector for the `mode` argument.
 */
typedef enum {
  /*
   Restarted search until consecutive runs agree.
   */
  RMPS_MODE_DEFAULT = 0,
  /*
   One fast run, intended for convex objectives.
   */
  RMPS_MODE_CONVEX = 1,
} RmpsMode;

/*
 Opaque benchmark function instantiated at a dimension and suite.
 */
typedef struct RmpsBenchmark RmpsBenchmark;

/*
 Opaque tuning parameters.
 */
typedef struct RmpsParams RmpsParams;

/*
 Opaque optimization result.
 */
typedef struct RmpsResult RmpsResult;

/*
 Objective callback. Receives `n` coordinates in the caller's box and the
 `user_data` pointer given to [`rmps_minimize`].

 With more than one worker the callback is invoked from several threads
 at once and must be thread safe.
 */
typedef double (*RmpsObjectiveFn)(const double *x, size_t n, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the most recent failure on this thread, or null if no call
 has failed yet. The string stays valid until the next failing call on
 this thread.
 */
const char *rmps_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *rmps_version(void);

/*
 Parameters initialized to the defaults. Never null.
 */
RmpsParams *rmps_params_new(void);

/*
 # Safety
 `params` must be null or a handle from [`rmps_params_new`] not yet freed.
 */
void rmps_params_free(RmpsParams *params);

/*
 Sets one parameter by name: `s_initial`, `rho1`, `rho2`, `phi`,
 `tol_fun`, `max_iter`, `max_runs` or `round_factor`. Integer parameters
 take whole values. The handle is left unchanged if the resulting
 parameter set would be invalid.

 # Safety
 `params` must be a live handle and `name` a NUL-terminated string.
 */
RmpsStatus rmps_params_set(RmpsParams *params, const char *name, double value);

/*
 Reads one parameter by name into `out`.

 # Safety
 `params` must be a live handle, `name` a NUL-terminated string and `out`
 writable.
 */
RmpsStatus rmps_params_get(const RmpsParams *params, const char *name, double *out);

/*
 Minimizes a C callback over the box `[lower, upper]` of dimension `dim`.

 `x0` is the start in box coordinates or null for the box center. `mode`
 is an [`RmpsMode`] value. `workers` is the number of threads evaluating
 probes; 1 calls the objective sequentially on the calling thread. On
 success `*out` receives a result handle owned by the caller.

 # Safety
 `params` must be a live handle, `lower` and `upper` must point to `dim`
 doubles, `x0` must be null or point to `dim` doubles, and `out` must be
 writable. `objective` must be safe to call with `user_data` for the
 whole call, from several threads at once if `workers > 1`.
 */
RmpsStatus rmps_minimize(const RmpsParams *params,
                         RmpsObjectiveFn objective,
                         void *user_data,
                         const double *lower,
                         const double *upper,
                         size_t dim,
                         const double *x0,
                         int32_t mode,
                         size_t workers,
                         RmpsResult **out);

/*
 Instantiates the named benchmark in dimension `dim` on the domain of
 `suite` (`"standard"`, `"highdim"` or `"boundary"`).

 # Safety
 `name` and `suite` must be NUL-terminated strings and `out` writable.
 */
RmpsStatus rmps_benchmark_new(const char *name, size_t dim, const char *suite, RmpsBenchmark **out);

/*
 # Safety
 `benchmark` must be null or a live handle.
 */
void rmps_benchmark_free(RmpsBenchmark *benchmark);

/*
 Dimension of the benchmark, or 0 for a null handle.

 # Safety
 `benchmark` must be null or a live handle.
 */
size_t rmps_benchmark_dim(const RmpsBenchmark *benchmark);

/*
 Copies the box of the benchmark into `lower` and `upper`, each of
 capacity `len`.

 # Safety
 `benchmark` must be a live handle and `lower`, `upper` writable for
 `len` doubles.
 */
RmpsStatus rmps_benchmark_bounds(const RmpsBenchmark *benchmark,
                                 double *lower,
                                 double *upper,
                                 size_t len);

/*
 Evaluates the benchmark at `x` (box coordinates, `len` values).

 # Safety
 `benchmark` must be a live handle, `x` readable for `len` doubles and
 `out` writable.
 */
RmpsStatus rmps_benchmark_eval(const RmpsBenchmark *benchmark,
                               const double *x,
                               size_t len,
                               double *out);

/*
 Writes the seeded uniform start point used by the command-line tool
 into `out` (capacity `len`).

 # Safety
 `benchmark` must be a live handle and `out` writable for `len` doubles.
 */
RmpsStatus rmps_benchmark_random_start(const RmpsBenchmark *benchmark,
                                       uint64_t seed,
                                       double *out,
                                       size_t len);

/*
 Minimizes a benchmark from `x0` (box coordinates, null for the center).

 # Safety
 As for [`rmps_minimize`], with `x0` holding the benchmark's dimension.
 */
RmpsStatus rmps_benchmark_minimize(const RmpsBenchmark *benchmark,
                                   const RmpsParams *params,
                                   const double *x0,
                                   int32_t mode,
                                   size_t workers,
                                   RmpsResult **out);

/*
 # Safety
 `result` must be null or a live handle.
 */
void rmps_result_free(RmpsResult *result);

/*
 Best objective value found, NaN for a null handle.

 # Safety
 `result` must be null or a live handle.
 */
double rmps_result_value(const RmpsResult *result);

/*
 Number of coordinates in the solution, 0 for a null handle.

 # Safety
 `result` must be null or a live handle.
 */
size_t rmps_result_dim(const RmpsResult *result);

/*
 Total objective evaluations, 0 for a null handle.

 # Safety
 `result` must be null or a live handle.
 */
size_t rmps_result_evals(const RmpsResult *result);

/*
 Number of runs performed, 0 for a null handle.

 # Safety
 `result` must be null or a live handle.
 */
size_t rmps_result_runs(const RmpsResult *result);

/*
 Copies the solution in box coordinates into `out` (capacity `len`).

 # Safety
 `result` must be a live handle and `out` writable for `len` doubles.
 */
RmpsStatus rmps_result_solution(const RmpsResult *result, double *out, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RMPS_H */
