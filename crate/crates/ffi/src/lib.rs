//! C ABI over the `ifdr` solver.
//!
//! Problems and results are opaque handles created by `ifdr_problem_*` /
//! `ifdr_run` and released with the matching `*_free`. Every fallible call
//! returns an [`IfdrStatus`]; the message of the last failure on the calling
//! thread is available from [`ifdr_last_error`].

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::{ptr, slice};

use ifdr::engine::{self, find_certificate, PsiMode, RunOutput};
use ifdr::gallery::{build_dnn_projection, build_markowitz, build_pathological, AngleRule, ReturnsDataset};
use ifdr::model::{InertiaSchedule, Point, SolverParams, SplitProblem};
use ifdr::nalgebra::DMatrix;
use ifdr::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IfdrStatus {
    Ok = 0,
    InvalidArgument = 1,
    Dataset = 2,
    Divergence = 3,
    NullPointer = 4,
    Numerical = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IfdrInertia {
    Zero = 0,
    Constant = 1,
    Restart = 2,
    NesterovTheta = 3,
    NegativeConstant = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IfdrParams {
    pub gamma: f64,
    pub lambda: f64,
    /// One of the `IfdrInertia` values.
    pub inertia: u32,
    /// `tau` for the constant schedules, `t` for the theta schedule.
    pub inertia_value: f64,
    pub max_iters: usize,
    /// Relative step-norm tolerance; 0 disables early stopping.
    pub stop_tol: f64,
    pub allow_negative_inertia: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IfdrTraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub step_norm: f64,
    pub fixed_point_residual: f64,
    pub feas_f: f64,
    pub feas_g: f64,
    /// NaN on the first iteration.
    pub e_n: f64,
    pub restarted: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IfdrCertificate {
    pub valid: bool,
    pub gamma: f64,
    pub lipschitz: f64,
    pub tau: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub delta: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub lambda_upper: f64,
}

/// Opaque problem handle.
pub struct IfdrProblem {
    problem: SplitProblem,
    start: Point,
}

/// Opaque run result handle.
pub struct IfdrResult {
    output: RunOutput,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> IfdrStatus {
    match err {
        Error::Dataset(_) | Error::Io(_) => IfdrStatus::Dataset,
        Error::Divergence { .. } => IfdrStatus::Divergence,
        Error::SvdFailure => IfdrStatus::Numerical,
        _ => IfdrStatus::InvalidArgument,
    }
}

fn fail(status: IfdrStatus, msg: impl Into<String>) -> IfdrStatus {
    set_error(msg.into());
    status
}

/// Runs `body`, translating errors and panics into statuses.
fn guard(body: impl FnOnce() -> Result<(), IfdrStatus>) -> IfdrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => IfdrStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(IfdrStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: ifdr::Result<T>) -> Result<T, IfdrStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn input<'a>(data: *const f64, len: usize) -> Result<&'a [f64], IfdrStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(IfdrStatus::NullPointer, "null input buffer"));
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn publish<T>(out: *mut *mut T, value: T) -> Result<(), IfdrStatus> {
    if out.is_null() {
        return Err(fail(IfdrStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, IfdrStatus> {
    p.as_ref().ok_or_else(|| fail(IfdrStatus::NullPointer, "null handle"))
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ifdr_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Nearest doubly nonnegative matrix to the symmetric `d x d` row-major `z`.
///
/// # Safety
/// `z` must be valid for `d * d` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_dnn(z: *const f64, d: usize, out: *mut *mut IfdrProblem) -> IfdrStatus {
    guard(|| {
        let values = input(z, d.checked_mul(d).ok_or(IfdrStatus::OutOfRange)?)?;
        let z = lift(Point::matrix(d, d, values.to_vec()))?;
        let problem = lift(build_dnn_projection(&z))?;
        publish(out, IfdrProblem { problem, start: Point::zeros_matrix(d, d) })
    })
}

/// Slow-convergence example with `blocks` rotated planes and quadratic
/// weight `rho`. The default start is the slowest mode.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_pathological(blocks: usize, rho: f64, out: *mut *mut IfdrProblem) -> IfdrStatus {
    guard(|| {
        let (instance, problem) = lift(build_pathological(blocks, rho, &AngleRule::Harmonic))?;
        publish(out, IfdrProblem { problem, start: instance.slow_start() })
    })
}

/// Tracking portfolio on `days x assets` row-major returns, all used for training.
///
/// # Safety
/// `returns` must be valid for `days * assets` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_markowitz(
    returns: *const f64,
    days: usize,
    assets: usize,
    out: *mut *mut IfdrProblem,
) -> IfdrStatus {
    guard(|| {
        let values = input(returns, days.checked_mul(assets).ok_or(IfdrStatus::OutOfRange)?)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(fail(IfdrStatus::Dataset, "non-finite return"));
        }
        let train = DMatrix::from_row_slice(days, assets, values);
        let data = lift(ReturnsDataset::new(train, DMatrix::zeros(0, assets)))?;
        let problem = lift(build_markowitz(&data))?;
        publish(out, IfdrProblem { problem, start: Point::zeros(assets) })
    })
}

/// # Safety
/// `p` must be null or a live handle from `ifdr_problem_*`.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_dimension(p: *const IfdrProblem) -> usize {
    p.as_ref().map_or(0, |p| p.problem.dimension())
}

/// Lipschitz constant of the smooth term; NaN for a null handle.
///
/// # Safety
/// `p` must be null or a live handle from `ifdr_problem_*`.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_lipschitz(p: *const IfdrProblem) -> f64 {
    p.as_ref().map_or(f64::NAN, |p| p.problem.h.lipschitz())
}

/// # Safety
/// `p` must be null or a handle from `ifdr_problem_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ifdr_problem_free(p: *mut IfdrProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn schedule(params: &IfdrParams) -> Result<InertiaSchedule, IfdrStatus> {
    let v = params.inertia_value;
    Ok(match params.inertia {
        x if x == IfdrInertia::Zero as u32 => InertiaSchedule::Zero,
        x if x == IfdrInertia::Constant as u32 => InertiaSchedule::Constant(v),
        x if x == IfdrInertia::Restart as u32 => InertiaSchedule::Restart,
        x if x == IfdrInertia::NesterovTheta as u32 => InertiaSchedule::NesterovTheta(v),
        x if x == IfdrInertia::NegativeConstant as u32 => InertiaSchedule::NegativeConstant(v),
        x => return Err(fail(IfdrStatus::InvalidArgument, format!("unknown inertia kind {x}"))),
    })
}

/// Runs the solver. `x0` may be null (problem default start) or hold
/// `x0_len == dimension` values. Restart inertia uses adaptive restart.
///
/// # Safety
/// `p` and `params` must be valid; `x0` valid for `x0_len` reads when non-null;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_run(
    p: *const IfdrProblem,
    params: *const IfdrParams,
    x0: *const f64,
    x0_len: usize,
    out: *mut *mut IfdrResult,
) -> IfdrStatus {
    guard(|| {
        let p = handle(p)?;
        let raw = handle(params)?;
        let start = if x0.is_null() {
            p.start.clone()
        } else {
            let x = lift(Point::new(input(x0, x0_len)?.to_vec()))?;
            lift(p.problem.check_point(&x))?;
            p.start.with_values(x.into_values())
        };
        let inertia = schedule(raw)?;
        let mut solver =
            SolverParams::new(raw.gamma, inertia, raw.max_iters).with_lambda(raw.lambda).with_stop_tol(raw.stop_tol);
        solver.allow_negative_inertia = raw.allow_negative_inertia;
        let output = if inertia == InertiaSchedule::Restart {
            lift(engine::run_with_restart(&p.problem, &solver, start, PsiMode::infer(&p.problem)))?
        } else {
            lift(engine::run(&p.problem, &solver, start))?
        };
        publish(out, IfdrResult { output })
    })
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ifdr_result_iterations(r: *const IfdrResult) -> usize {
    r.as_ref().map_or(0, |r| r.output.iterations())
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ifdr_result_restarts(r: *const IfdrResult) -> usize {
    r.as_ref().map_or(0, |r| r.output.restarts)
}

/// Copies the final `x_n` into `buf`, which must hold the problem dimension.
///
/// # Safety
/// `r` must be a live result handle; `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ifdr_result_solution(r: *const IfdrResult, buf: *mut f64, len: usize) -> IfdrStatus {
    guard(|| {
        let values = handle(r)?.output.solution.values();
        if buf.is_null() {
            return Err(fail(IfdrStatus::NullPointer, "null output buffer"));
        }
        if len < values.len() {
            return Err(fail(IfdrStatus::OutOfRange, format!("buffer holds {len}, need {}", values.len())));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

/// Trace row `index` (0-based).
///
/// # Safety
/// `r` must be a live result handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_result_trace(
    r: *const IfdrResult,
    index: usize,
    out: *mut IfdrTraceRecord,
) -> IfdrStatus {
    guard(|| {
        let trace = &handle(r)?.output.trace;
        let rec =
            trace.get(index).ok_or_else(|| fail(IfdrStatus::OutOfRange, format!("trace has {} rows", trace.len())))?;
        if out.is_null() {
            return Err(fail(IfdrStatus::NullPointer, "null output pointer"));
        }
        *out = IfdrTraceRecord {
            iter: rec.iter,
            objective: rec.objective,
            step_norm: rec.step_norm,
            fixed_point_residual: rec.fixed_point_residual,
            feas_f: rec.feasibility_f,
            feas_g: rec.feasibility_g,
            e_n: rec.e_n.unwrap_or(f64::NAN),
            restarted: rec.restarted,
        };
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a result handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ifdr_result_free(r: *mut IfdrResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Searches for convergence witnesses for fixed `(gamma, tau, lambda)`.
/// Returns `Ok` whether or not the parameters are valid; see `out->valid`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ifdr_validate(
    gamma: f64,
    lipschitz: f64,
    tau: f64,
    lambda: f64,
    out: *mut IfdrCertificate,
) -> IfdrStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(IfdrStatus::NullPointer, "null output pointer"));
        }
        if !(lipschitz > 0.0 && lipschitz.is_finite()) {
            return Err(fail(IfdrStatus::InvalidArgument, format!("lipschitz must be positive, got {lipschitz}")));
        }
        let c = find_certificate(gamma, lipschitz, tau, lambda);
        *out = IfdrCertificate {
            valid: c.valid,
            gamma: c.gamma,
            lipschitz: c.lipschitz,
            tau: c.tau,
            lambda: c.lambda,
            kappa: c.kappa,
            delta: c.delta,
            sigma: c.sigma,
            alpha: c.alpha,
            lambda_upper: c.lambda_upper,
        };
        Ok(())
    })
}

/// Largest constant inertia certified for `(gamma, lambda)`; 0 when even
/// `tau = 0` fails, NaN for a non-positive `lipschitz`.
#[no_mangle]
pub extern "C" fn ifdr_max_fixed_tau(gamma: f64, lipschitz: f64, lambda: f64) -> f64 {
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return f64::NAN;
    }
    catch_unwind(|| engine::max_fixed_tau(gamma, lipschitz, lambda)).unwrap_or(f64::NAN)
}
