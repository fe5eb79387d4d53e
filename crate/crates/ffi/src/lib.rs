//! C ABI for the `rmps` optimizer.
//!
//! Every object handed to C is an opaque heap handle created by a `*_new`
//! (or `*_minimize`) function and released by the matching `*_free`.
//! Fallible functions return an [`RmpsStatus`]; on failure a description is
//! available from [`rmps_last_error`] on the same thread until the next
//! failing call.
//!
//! The generated header lives at `include/rmps.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use rmps::bench::{self, BenchError, BenchmarkSpec, Suite};
use rmps::pool::PoolError;
use rmps::{Bounds, BoxObjective, OptimizeError, OptimizeResult, Rmps, TuningParams};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmpsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument is malformed: bad UTF-8, wrong length, unknown mode or
    /// parameter name, a start point outside the box, and so on.
    InvalidArgument = 2,
    /// Tuning parameters failed validation.
    InvalidParams = 3,
    /// The objective returned NaN or an infinity.
    NonFiniteObjective = 4,
    /// No benchmark with that name, dimension or suite.
    UnknownBenchmark = 5,
    /// The output buffer is shorter than the data to copy.
    BufferTooSmall = 6,
    /// An internal error. The handle arguments remain valid.
    Internal = 7,
}

/// Search mode selector for the `mode` argument.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmpsMode {
    /// Restarted search until consecutive runs agree.
    Default = 0,
    /// One fast run, intended for convex objectives.
    Convex = 1,
}

/// Objective callback. Receives `n` coordinates in the caller's box and the
/// `user_data` pointer given to [`rmps_minimize`].
///
/// With more than one worker the callback is invoked from several threads
/// at once and must be thread safe.
pub type RmpsObjectiveFn =
    Option<unsafe extern "C" fn(x: *const f64, n: usize, user_data: *mut c_void) -> f64>;

/// Opaque tuning parameters.
pub struct RmpsParams(TuningParams);

/// Opaque benchmark function instantiated at a dimension and suite.
pub struct RmpsBenchmark(BenchmarkSpec);

/// Opaque optimization result.
pub struct RmpsResult(OptimizeResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: RmpsStatus,
    message: String,
}

impl Failure {
    fn new(status: RmpsStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Self::new(RmpsStatus::NullPointer, format!("`{what}` is null"))
    }
}

impl From<OptimizeError> for Failure {
    fn from(e: OptimizeError) -> Self {
        let status = match e {
            OptimizeError::Params(_) => RmpsStatus::InvalidParams,
            OptimizeError::Domain(_) => RmpsStatus::InvalidArgument,
            OptimizeError::NonFinite { .. } => RmpsStatus::NonFiniteObjective,
            OptimizeError::Pool(PoolError::NoWorkers) => RmpsStatus::InvalidArgument,
            OptimizeError::Pool(_) => RmpsStatus::Internal,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        let status = match e {
            BenchError::Domain(_) => RmpsStatus::InvalidArgument,
            _ => RmpsStatus::UnknownBenchmark,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, converting failures and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RmpsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RmpsStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(fail.message);
            fail.status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_last_error(format!("internal error: {msg}"));
            RmpsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(RmpsStatus::InvalidArgument, format!("`{what}` is not UTF-8")))
}

unsafe fn slice_arg<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    Ok(slice::from_raw_parts(p, n))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    if len < src.len() {
        return Err(Failure::new(
            RmpsStatus::BufferTooSmall,
            format!("`{what}` holds {len} values, {} needed", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

fn mode_arg(mode: i32) -> Result<RmpsMode, Failure> {
    match mode {
        0 => Ok(RmpsMode::Default),
        1 => Ok(RmpsMode::Convex),
        other => Err(Failure::new(
            RmpsStatus::InvalidArgument,
            format!("unknown mode {other}"),
        )),
    }
}

/// Message of the most recent failure on this thread, or null if no call
/// has failed yet. The string stays valid until the next failing call on
/// this thread.
#[no_mangle]
pub extern "C" fn rmps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rmps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parameters initialized to the defaults. Never null.
#[no_mangle]
pub extern "C" fn rmps_params_new() -> *mut RmpsParams {
    Box::into_raw(Box::new(RmpsParams(TuningParams::default())))
}

/// # Safety
/// `params` must be null or a handle from [`rmps_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rmps_params_free(params: *mut RmpsParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

fn param_slot<'a>(p: &'a mut TuningParams, name: &str) -> Result<ParamSlot<'a>, Failure> {
    Ok(match name {
        "s_initial" => ParamSlot::Real(&mut p.s_initial),
        "rho1" => ParamSlot::Real(&mut p.rho1),
        "rho2" => ParamSlot::Real(&mut p.rho2),
        "phi" => ParamSlot::Real(&mut p.phi),
        "tol_fun" => ParamSlot::Real(&mut p.tol_fun),
        "max_iter" => ParamSlot::Count(&mut p.max_iter),
        "max_runs" => ParamSlot::Count(&mut p.max_runs),
        "round_factor" => ParamSlot::Digits(&mut p.round_factor),
        other => {
            return Err(Failure::new(
                RmpsStatus::InvalidArgument,
                format!("unknown parameter `{other}`"),
            ))
        }
    })
}

enum ParamSlot<'a> {
    Real(&'a mut f64),
    Count(&'a mut usize),
    Digits(&'a mut u32),
}

fn whole(name: &str, value: f64, max: f64) -> Result<f64, Failure> {
    if value.fract() == 0.0 && (0.0..=max).contains(&value) {
        Ok(value)
    } else {
        Err(Failure::new(
            RmpsStatus::InvalidParams,
            format!("`{name}` must be a whole number in [0, {max}], got {value}"),
        ))
    }
}

/// Sets one parameter by name: `s_initial`, `rho1`, `rho2`, `phi`,
/// `tol_fun`, `max_iter`, `max_runs` or `round_factor`. Integer parameters
/// take whole values. The handle is left unchanged if the resulting
/// parameter set would be invalid.
///
/// # Safety
/// `params` must be a live handle and `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rmps_params_set(
    params: *mut RmpsParams,
    name: *const c_char,
    value: f64,
) -> RmpsStatus {
    guard(|| {
        let params = params.as_mut().ok_or_else(|| Failure::null("params"))?;
        let name = str_arg(name, "name")?;
        let mut next = params.0;
        match param_slot(&mut next, name)? {
            ParamSlot::Real(v) => *v = value,
            ParamSlot::Count(v) => *v = whole(name, value, 2f64.powi(53))? as usize,
            ParamSlot::Digits(v) => *v = whole(name, value, 15.0)? as u32,
        }
        next.validate()
            .map_err(|e| Failure::new(RmpsStatus::InvalidParams, e.to_string()))?;
        params.0 = next;
        Ok(())
    })
}

/// Reads one parameter by name into `out`.
///
/// # Safety
/// `params` must be a live handle, `name` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rmps_params_get(
    params: *const RmpsParams,
    name: *const c_char,
    out: *mut f64,
) -> RmpsStatus {
    guard(|| {
        let mut p = ref_arg(params, "params")?.0;
        let v = match param_slot(&mut p, str_arg(name, "name")?)? {
            ParamSlot::Real(v) => *v,
            ParamSlot::Count(v) => *v as f64,
            ParamSlot::Digits(v) => *v as f64,
        };
        write_out(out, v, "out")
    })
}

#[derive(Clone, Copy)]
struct Callback {
    f: unsafe extern "C" fn(*const f64, usize, *mut c_void) -> f64,
    user_data: *mut c_void,
}

// The caller promises a thread-safe callback whenever workers > 1.
unsafe impl Send for Callback {}
unsafe impl Sync for Callback {}

impl Callback {
    fn call(&self, z: &[f64]) -> f64 {
        unsafe { (self.f)(z.as_ptr(), z.len(), self.user_data) }
    }
}

fn run(
    params: &TuningParams,
    obj: &BoxObjective<impl Fn(&[f64]) -> f64 + Sync>,
    x0: Option<&[f64]>,
    mode: RmpsMode,
    workers: usize,
) -> Result<Box<RmpsResult>, Failure> {
    let bounds = obj.bounds();
    let start = match x0 {
        Some(z) => bounds.to_unit(z).map_err(OptimizeError::from)?,
        None => rmps::UnitPoint::center(bounds.dim()),
    };
    let mut rmps = Rmps::new(*params)?.with_workers(workers)?;
    let result = match mode {
        RmpsMode::Default => rmps.minimize(obj, &start)?,
        RmpsMode::Convex => rmps.minimize_convex(obj, &start)?,
    };
    Ok(Box::new(RmpsResult(result)))
}

/// Minimizes a C callback over the box `[lower, upper]` of dimension `dim`.
///
/// `x0` is the start in box coordinates or null for the box center. `mode`
/// is an [`RmpsMode`] value. `workers` is the number of threads evaluating
/// probes; 1 calls the objective sequentially on the calling thread. On
/// success `*out` receives a result handle owned by the caller.
///
/// # Safety
/// `params` must be a live handle, `lower` and `upper` must point to `dim`
/// doubles, `x0` must be null or point to `dim` doubles, and `out` must be
/// writable. `objective` must be safe to call with `user_data` for the
/// whole call, from several threads at once if `workers > 1`.
#[no_mangle]
pub unsafe extern "C" fn rmps_minimize(
    params: *const RmpsParams,
    objective: RmpsObjectiveFn,
    user_data: *mut c_void,
    lower: *const f64,
    upper: *const f64,
    dim: usize,
    x0: *const f64,
    mode: i32,
    workers: usize,
    out: *mut *mut RmpsResult,
) -> RmpsStatus {
    guard(|| {
        let params = &ref_arg(params, "params")?.0;
        let f = objective.ok_or_else(|| Failure::null("objective"))?;
        let lower = slice_arg(lower, dim, "lower")?;
        let upper = slice_arg(upper, dim, "upper")?;
        let x0 = if x0.is_null() {
            None
        } else {
            Some(slice::from_raw_parts(x0, dim))
        };
        let mode = mode_arg(mode)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let bounds = Bounds::new(lower.to_vec(), upper.to_vec()).map_err(OptimizeError::from)?;
        let cb = Callback { f, user_data };
        let obj = BoxObjective::new(bounds, move |z: &[f64]| cb.call(z));
        let result = run(params, &obj, x0, mode, workers)?;
        out.write(Box::into_raw(result));
        Ok(())
    })
}

/// Instantiates the named benchmark in dimension `dim` on the domain of
/// `suite` (`"standard"`, `"highdim"` or `"boundary"`).
///
/// # Safety
/// `name` and `suite` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_new(
    name: *const c_char,
    dim: usize,
    suite: *const c_char,
    out: *mut *mut RmpsBenchmark,
) -> RmpsStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let suite: Suite = str_arg(suite, "suite")?.parse()?;
        let spec = bench::lookup(name, dim, suite)?;
        write_out(out, Box::into_raw(Box::new(RmpsBenchmark(spec))), "out")
    })
}

/// # Safety
/// `benchmark` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_free(benchmark: *mut RmpsBenchmark) {
    if !benchmark.is_null() {
        drop(Box::from_raw(benchmark));
    }
}

/// Dimension of the benchmark, or 0 for a null handle.
///
/// # Safety
/// `benchmark` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_dim(benchmark: *const RmpsBenchmark) -> usize {
    benchmark.as_ref().map_or(0, |b| b.0.dimension)
}

/// Copies the box of the benchmark into `lower` and `upper`, each of
/// capacity `len`.
///
/// # Safety
/// `benchmark` must be a live handle and `lower`, `upper` writable for
/// `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_bounds(
    benchmark: *const RmpsBenchmark,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> RmpsStatus {
    guard(|| {
        let b = &ref_arg(benchmark, "benchmark")?.0.bounds;
        copy_out(b.lower(), lower, len, "lower")?;
        copy_out(b.upper(), upper, len, "upper")
    })
}

/// Evaluates the benchmark at `x` (box coordinates, `len` values).
///
/// # Safety
/// `benchmark` must be a live handle, `x` readable for `len` doubles and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_eval(
    benchmark: *const RmpsBenchmark,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> RmpsStatus {
    guard(|| {
        let spec = &ref_arg(benchmark, "benchmark")?.0;
        let x = slice_arg(x, len, "x")?;
        if len != spec.dimension {
            return Err(Failure::new(
                RmpsStatus::InvalidArgument,
                format!("expected {} coordinates, got {len}", spec.dimension),
            ));
        }
        write_out(out, spec.eval(x), "out")
    })
}

/// Writes the seeded uniform start point used by the command-line tool
/// into `out` (capacity `len`).
///
/// # Safety
/// `benchmark` must be a live handle and `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_random_start(
    benchmark: *const RmpsBenchmark,
    seed: u64,
    out: *mut f64,
    len: usize,
) -> RmpsStatus {
    guard(|| {
        let spec = &ref_arg(benchmark, "benchmark")?.0;
        copy_out(&bench::random_start(&spec.bounds, seed), out, len, "out")
    })
}

/// Minimizes a benchmark from `x0` (box coordinates, null for the center).
///
/// # Safety
/// As for [`rmps_minimize`], with `x0` holding the benchmark's dimension.
#[no_mangle]
pub unsafe extern "C" fn rmps_benchmark_minimize(
    benchmark: *const RmpsBenchmark,
    params: *const RmpsParams,
    x0: *const f64,
    mode: i32,
    workers: usize,
    out: *mut *mut RmpsResult,
) -> RmpsStatus {
    guard(|| {
        let spec = &ref_arg(benchmark, "benchmark")?.0;
        let params = &ref_arg(params, "params")?.0;
        let x0 = if x0.is_null() {
            None
        } else {
            Some(slice::from_raw_parts(x0, spec.dimension))
        };
        let mode = mode_arg(mode)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let result = run(params, &spec.objective(), x0, mode, workers)?;
        out.write(Box::into_raw(result));
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_free(result: *mut RmpsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Best objective value found, NaN for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_value(result: *const RmpsResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.0.value)
}

/// Number of coordinates in the solution, 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_dim(result: *const RmpsResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.solution.len())
}

/// Total objective evaluations, 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_evals(result: *const RmpsResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.total_evals)
}

/// Number of runs performed, 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_runs(result: *const RmpsResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.runs)
}

/// Copies the solution in box coordinates into `out` (capacity `len`).
///
/// # Safety
/// `result` must be a live handle and `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn rmps_result_solution(
    result: *const RmpsResult,
    out: *mut f64,
    len: usize,
) -> RmpsStatus {
    guard(|| copy_out(&ref_arg(result, "result")?.0.solution, out, len, "out"))
}
