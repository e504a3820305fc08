//! C ABI over `qweight`.
//!
//! Handles are opaque and owned by the caller once returned; each has a
//! matching `*_free`. Strings returned through `char **` out-parameters
//! must be released with [`qw_string_free`]. On failure a function returns a
//! non-zero [`QwStatus`] and [`qw_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use qweight::laurent::engine::ExpandOptions;
use qweight::verify::{
    emit_report, exit_code, run_suite, statements, Cache, Context, Grid, ReportFormat, SuiteSpec, Verdict,
    VerificationReport,
};
use qweight::weight::{dp_integral, WeightSpec};
use qweight::{Error, ExactScalar};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    DivisionByZero = 5,
    Pole = 6,
    UnknownStatement = 7,
    Cache = 8,
    Internal = 9,
    Panic = 10,
}

/// Verdict of one check, mirroring the report column.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QwVerdict {
    Verified = 0,
    Refuted = 1,
    MismatchReported = 2,
    Skipped = 3,
}

/// An exact element of Q(q, t).
pub struct QwScalar(ExactScalar);

/// Shared options and caches for verification runs.
pub struct QwContext(Context);

/// The reports produced by one verification run.
pub struct QwReports(Vec<VerificationReport>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> QwStatus {
    match e {
        Error::Parse(_) => QwStatus::Parse,
        Error::DivisionByZero | Error::ZeroDenominator => QwStatus::DivisionByZero,
        Error::Pole(_) => QwStatus::Pole,
        Error::UnknownStatement(_) => QwStatus::UnknownStatement,
        Error::Cache(_) => QwStatus::Cache,
        Error::InvalidArgument(_) | Error::ExponentLength { .. } | Error::VarSetMismatch | Error::ExponentRange(_) => {
            QwStatus::InvalidArgument
        }
        _ => QwStatus::Internal,
    }
}

struct Fail(QwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording failures and catching panics.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> QwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QwStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside qweight");
            QwStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(QwStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(QwStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Fail(QwStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failure on this thread. Valid until the next call
/// that fails; never null.
#[no_mangle]
pub extern "C" fn qw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text such as `(1 - q^2)/(1 - q*t)`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_parse(src: *const c_char, out: *mut *mut QwScalar) -> QwStatus {
    guard(|| {
        let s: ExactScalar = text(src)?.parse()?;
        put(out, QwScalar(s))
    })
}

/// The integer `c`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_from_int(c: i64, out: *mut *mut QwScalar) -> QwStatus {
    guard(|| put(out, QwScalar(ExactScalar::from_i64(c))))
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_free(s: *mut QwScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical text of `s`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_to_string(s: *const QwScalar, out: *mut *mut c_char) -> QwStatus {
    guard(|| put_string(out, borrow(s)?.0.to_string()))
}

/// Whether two scalars are equal; written to `out` as 0 or 1.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_equal(a: *const QwScalar, b: *const QwScalar, out: *mut i32) -> QwStatus {
    guard(|| {
        let eq = borrow(a)?.0 == borrow(b)?.0;
        *out.as_mut().ok_or_else(null)? = i32::from(eq);
        Ok(())
    })
}

/// Arithmetic operation for [`qw_scalar_binary`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QwOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// `out = a op b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_binary(
    op: QwOp,
    a: *const QwScalar,
    b: *const QwScalar,
    out: *mut *mut QwScalar,
) -> QwStatus {
    guard(|| {
        let (a, b) = (&borrow(a)?.0, &borrow(b)?.0);
        let r = match op {
            QwOp::Add => a + b,
            QwOp::Sub => a - b,
            QwOp::Mul => a * b,
            QwOp::Div => a.checked_div(b)?,
        };
        put(out, QwScalar(r))
    })
}

fn ratio(num: i64, den: i64) -> Result<BigRational, Fail> {
    if den == 0 {
        return Err(Fail(
            QwStatus::DivisionByZero,
            "zero denominator in evaluation point".into(),
        ));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Value at `q = q_num/q_den`, `t = t_num/t_den`, written as `n/d` or `n`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_scalar_evaluate(
    s: *const QwScalar,
    q_num: i64,
    q_den: i64,
    t_num: i64,
    t_den: i64,
    out: *mut *mut c_char,
) -> QwStatus {
    guard(|| {
        let v = borrow(s)?.0.evaluate(&ratio(q_num, q_den)?, &ratio(t_num, t_den)?)?;
        put_string(out, v.to_string())
    })
}

/// `CT(weight · (x; q)_a (q/x; q)_b)` over block sizes `n[0..len]`.
///
/// # Safety
/// `n` must point to `len` readable values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qw_weight_integral(
    n: *const usize,
    len: usize,
    lam: usize,
    a: usize,
    b: usize,
    out: *mut *mut QwScalar,
) -> QwStatus {
    guard(|| {
        if n.is_null() {
            return Err(null());
        }
        let sizes = std::slice::from_raw_parts(n, len).to_vec();
        let v = dp_integral(&WeightSpec::new(sizes, lam)?, a, b)?;
        put(out, QwScalar(v))
    })
}

/// Number of statement ids; see [`qw_statement_id`].
#[no_mangle]
pub extern "C" fn qw_statement_count() -> usize {
    statements().len()
}

/// Id of statement `i`, or null when out of range. Static; do not free.
#[no_mangle]
pub extern "C" fn qw_statement_id(i: usize) -> *const c_char {
    static IDS: std::sync::OnceLock<Vec<CString>> = std::sync::OnceLock::new();
    let ids = IDS.get_or_init(|| {
        statements()
            .iter()
            .map(|s| CString::new(s.id).expect("ids have no NUL"))
            .collect()
    });
    ids.get(i).map_or(ptr::null(), |c| c.as_ptr())
}

/// A verification context. `cache_dir` may be null to disable the cache;
/// `jobs` of 0 uses the default thread count.
///
/// # Safety
/// `cache_dir` must be null or NUL-terminated, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_context_new(
    cache_dir: *const c_char,
    jobs: usize,
    dehomogenize: i32,
    out: *mut *mut QwContext,
) -> QwStatus {
    guard(|| {
        let cache = if cache_dir.is_null() {
            None
        } else {
            Some(Cache::open(text(cache_dir)?)?)
        };
        let mut ctx = Context::new(
            ExpandOptions {
                dehomogenize: dehomogenize != 0,
            },
            cache,
        );
        ctx.jobs = (jobs > 0).then_some(jobs);
        put(out, QwContext(ctx))
    })
}

/// # Safety
/// `ctx` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_context_free(ctx: *mut QwContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Runs the suite of `id` (or every suite for `all`). `grid_json` may be
/// null for the default grid, or an object such as `{"n0": [2], "lam": [1]}`.
///
/// # Safety
/// `ctx` must be a live handle, `id` NUL-terminated, `grid_json` null or
/// NUL-terminated, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_verify(
    ctx: *const QwContext,
    id: *const c_char,
    grid_json: *const c_char,
    seed: u64,
    out: *mut *mut QwReports,
) -> QwStatus {
    guard(|| {
        let ctx = &borrow(ctx)?.0;
        let id = text(id)?;
        let grid: Grid = if grid_json.is_null() {
            Grid::default()
        } else {
            serde_json::from_str(text(grid_json)?).map_err(|e| Fail(QwStatus::Parse, format!("grid: {e}")))?
        };
        let ids: Vec<&str> = if id == "all" {
            statements().iter().map(|s| s.id).collect()
        } else {
            vec![id]
        };
        let mut reports = Vec::new();
        for id in ids {
            let spec = SuiteSpec {
                id: id.to_string(),
                grid: grid.clone(),
                seed,
            };
            reports.extend(run_suite(&spec, ctx)?);
        }
        put(out, QwReports(reports))
    })
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_reports_free(r: *mut QwReports) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of reports; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_reports_len(r: *const QwReports) -> usize {
    r.as_ref().map_or(0, |r| r.0.len())
}

/// Verdict of report `i`.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_reports_verdict(r: *const QwReports, i: usize, out: *mut QwVerdict) -> QwStatus {
    guard(|| {
        let rep = borrow(r)?
            .0
            .get(i)
            .ok_or_else(|| Fail(QwStatus::InvalidArgument, format!("report index {i} out of range")))?;
        let v = match rep.verdict {
            Verdict::Verified => QwVerdict::Verified,
            Verdict::Refuted => QwVerdict::Refuted,
            Verdict::MismatchReported => QwVerdict::MismatchReported,
            Verdict::Skipped => QwVerdict::Skipped,
        };
        *out.as_mut().ok_or_else(null)? = v;
        Ok(())
    })
}

/// The reports as JSON lines (`structured != 0`) or the human table.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qw_reports_render(r: *const QwReports, structured: i32, out: *mut *mut c_char) -> QwStatus {
    guard(|| {
        let format = if structured != 0 {
            ReportFormat::Structured
        } else {
            ReportFormat::Human
        };
        put_string(out, emit_report(&borrow(r)?.0, format))
    })
}

/// Process exit code the CLI would use for these reports: 1 if any check
/// is refuted, 2 if any mismatch is reported, otherwise 0.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_reports_exit_code(r: *const QwReports) -> i32 {
    r.as_ref().map_or(0, |r| exit_code(&r.0))
}
