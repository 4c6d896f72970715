//! C ABI over `li-core`.
//!
//! Every fallible call returns a [`LiStatus`] and writes its result through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`li_last_error_message`]. Zero tables and H_n contexts are opaque
//! handles owned by the caller and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use li_core::li::{li_arithmetic_with_error, li_norm, li_zero_sum};
use li_core::modelspace::HnContext;
use li_core::quad::QuadConfig;
use li_core::special::{xi, zeta, EvalOptions};
use li_core::stieltjes::eta_from_powerseries;
use li_core::zeros::{find_zeros, load_or_compute, ZeroTable};
use li_core::{Complex64, Error};

/// Status codes. Values 2 to 9 agree with the exit codes of the `li` binary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiStatus {
    Ok = 0,
    InvalidArgument = 2,
    Cache = 3,
    MissedZero = 4,
    BudgetExceeded = 5,
    FitFailure = 6,
    Pole = 7,
    NoConvergence = 8,
    TableTooShort = 9,
    NullPointer = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for LiComplex {
    fn from(z: Complex64) -> Self {
        LiComplex { re: z.re, im: z.im }
    }
}

impl From<LiComplex> for Complex64 {
    fn from(z: LiComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque zero table.
pub struct LiZeroTable(ZeroTable);

/// Opaque H_n evaluator for one fixed n.
pub struct LiHnContext(HnContext);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> LiStatus {
    match e.exit_code() {
        2 => LiStatus::InvalidArgument,
        3 => LiStatus::Cache,
        4 => LiStatus::MissedZero,
        5 => LiStatus::BudgetExceeded,
        6 => LiStatus::FitFailure,
        7 => LiStatus::Pole,
        8 => LiStatus::NoConvergence,
        _ => LiStatus::TableTooShort,
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), LiStatusOr>) -> LiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LiStatus::Ok,
        Ok(Err(LiStatusOr::Core(e))) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Ok(Err(LiStatusOr::Status(status, msg))) => {
            set_error(msg.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            LiStatus::Panic
        }
    }
}

enum LiStatusOr {
    Core(Error),
    Status(LiStatus, &'static str),
}

impl From<Error> for LiStatusOr {
    fn from(e: Error) -> Self {
        LiStatusOr::Core(e)
    }
}

const NULL: LiStatusOr = LiStatusOr::Status(LiStatus::NullPointer, "null pointer argument");

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, LiStatusOr> {
    p.as_mut().ok_or(NULL)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, LiStatusOr> {
    p.as_ref().ok_or(NULL)
}

/// Copies the last error message of the calling thread into `buf`,
/// NUL-terminated and truncated to `len` bytes. Returns the full message
/// length without the terminator, so a caller can size a second attempt.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn li_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Finds all zeros with 0 < γ ≤ `height` from scratch.
///
/// # Safety
/// `table_out` must be a valid pointer; on success it receives a handle to
/// be released with [`li_zeros_free`].
#[no_mangle]
pub unsafe extern "C" fn li_zeros_compute(height: f64, table_out: *mut *mut LiZeroTable) -> LiStatus {
    guard(|| {
        let slot = out(table_out)?;
        let table = find_zeros(height)?;
        *slot = Box::into_raw(Box::new(LiZeroTable(table)));
        Ok(())
    })
}

/// Like [`li_zeros_compute`] but reads and updates the cache in `cache_dir`.
///
/// # Safety
/// `cache_dir` must be a NUL-terminated UTF-8 path; `table_out` as in
/// [`li_zeros_compute`].
#[no_mangle]
pub unsafe extern "C" fn li_zeros_load(
    cache_dir: *const c_char,
    height: f64,
    recompute: bool,
    table_out: *mut *mut LiZeroTable,
) -> LiStatus {
    guard(|| {
        let slot = out(table_out)?;
        let dir = handle(cache_dir)?;
        let dir = CStr::from_ptr(dir)
            .to_str()
            .map_err(|_| LiStatusOr::Status(LiStatus::InvalidArgument, "cache_dir is not UTF-8"))?;
        let table = load_or_compute(Path::new(dir), height, recompute)?;
        *slot = Box::into_raw(Box::new(LiZeroTable(table)));
        Ok(())
    })
}

/// Number of distinct ordinates; 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn li_zeros_len(table: *const LiZeroTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// Height bound the table is complete to; NaN for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn li_zeros_height(table: *const LiZeroTable) -> f64 {
    table.as_ref().map_or(f64::NAN, |t| t.0.height_bound())
}

/// Ordinate and multiplicity of zero `index` (0-based, ascending).
///
/// # Safety
/// `table` must be a live handle, the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn li_zeros_get(
    table: *const LiZeroTable,
    index: usize,
    gamma_out: *mut f64,
    multiplicity_out: *mut u32,
) -> LiStatus {
    guard(|| {
        let t = &handle(table)?.0;
        let (g, m) = (out(gamma_out)?, out(multiplicity_out)?);
        if index >= t.len() {
            return Err(LiStatusOr::Status(LiStatus::InvalidArgument, "zero index out of range"));
        }
        *g = t.ordinates()[index];
        *m = t.multiplicities()[index];
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn li_zeros_free(table: *mut LiZeroTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// λ_n from Stieltjes constants, with an error estimate.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn li_lambda_arithmetic(n: u32, value_out: *mut f64, err_out: *mut f64) -> LiStatus {
    guard(|| {
        let (v, e) = (out(value_out)?, out(err_out)?);
        let eta = eta_from_powerseries((n as usize).saturating_sub(1))?;
        (*v, *e) = li_arithmetic_with_error(n, &eta)?;
        Ok(())
    })
}

/// λ_n from the zeros in `table`, tail-corrected; `tail_out` is the error
/// budget of the truncation.
///
/// # Safety
/// `table` must be a live handle, the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn li_lambda_zero_sum(
    table: *const LiZeroTable,
    n: u32,
    value_out: *mut f64,
    tail_out: *mut f64,
) -> LiStatus {
    guard(|| {
        let t = &handle(table)?.0;
        let (v, e) = (out(value_out)?, out(tail_out)?);
        let zs = li_zero_sum(n, t)?;
        *v = zs.value;
        *e = zs.tail;
        Ok(())
    })
}

/// λ_n as ‖G_n‖²/2π integrated over [−span, span] plus a fitted tail.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn li_lambda_norm(
    n: u32,
    span: f64,
    rel_tol: f64,
    value_out: *mut f64,
    err_out: *mut f64,
) -> LiStatus {
    guard(|| {
        let (v, e) = (out(value_out)?, out(err_out)?);
        let cfg = QuadConfig {
            rel_tol,
            ..QuadConfig::with_span(span)
        };
        let ctx = HnContext::new(n)?;
        let norm = li_norm(&ctx, &cfg)?;
        *v = norm.value;
        *e = norm.err;
        Ok(())
    })
}

/// # Safety
/// `ctx_out` must be valid; the handle is released with [`li_hn_free`].
#[no_mangle]
pub unsafe extern "C" fn li_hn_new(n: u32, ctx_out: *mut *mut LiHnContext) -> LiStatus {
    guard(|| {
        let slot = out(ctx_out)?;
        *slot = Box::into_raw(Box::new(LiHnContext(HnContext::new(n)?)));
        Ok(())
    })
}

/// H_n(s).
///
/// # Safety
/// `ctx` must be a live handle, `value_out` valid.
#[no_mangle]
pub unsafe extern "C" fn li_hn_eval(ctx: *const LiHnContext, s: LiComplex, value_out: *mut LiComplex) -> LiStatus {
    guard(|| {
        let c = &handle(ctx)?.0;
        *out(value_out)? = c.h(s.into())?.into();
        Ok(())
    })
}

/// G_n(z), the same function in the upper half-plane variable.
///
/// # Safety
/// `ctx` must be a live handle, `value_out` valid.
#[no_mangle]
pub unsafe extern "C" fn li_gn_eval(ctx: *const LiHnContext, z: LiComplex, value_out: *mut LiComplex) -> LiStatus {
    guard(|| {
        let c = &handle(ctx)?.0;
        *out(value_out)? = c.g(z.into())?.into();
        Ok(())
    })
}

/// # Safety
/// `ctx` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn li_hn_free(ctx: *mut LiHnContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// ζ(s) at default accuracy.
///
/// # Safety
/// `value_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn li_zeta(s: LiComplex, value_out: *mut LiComplex) -> LiStatus {
    guard(|| {
        *out(value_out)? = zeta(s.into(), &EvalOptions::default())?.into();
        Ok(())
    })
}

/// ξ(s) = s(s−1)/2 · π^{−s/2} Γ(s/2) ζ(s).
///
/// # Safety
/// `value_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn li_xi(s: LiComplex, value_out: *mut LiComplex) -> LiStatus {
    guard(|| {
        *out(value_out)? = xi(s.into())?.into();
        Ok(())
    })
}
