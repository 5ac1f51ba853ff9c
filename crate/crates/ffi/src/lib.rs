//! C interface to fglobs.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `*_free`. Strings returned by the library are NUL-terminated UTF-8 and must
//! be released with [`fglobs_string_free`]. Every fallible call returns a
//! [`FglobsStatus`]; on failure [`fglobs_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fglobs::cli::{run, Outcome, OutputFormat, RunConfig};
use fglobs::obstruction::{en_verdict, Level, ObstructionVerdict, OrientationData};
use fglobs::series::Trunc;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FglobsStatus {
    Ok = 0,
    InvalidArgument = 1,
    Computation = 2,
    NullPointer = 3,
    Utf8 = 4,
    Panic = 5,
}

/// The result of running one configuration.
pub struct FglobsReport {
    outcome: Outcome,
}

/// An E_n verdict.
pub struct FglobsVerdict {
    verdict: ObstructionVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn guarded(f: impl FnOnce() -> Result<(), (FglobsStatus, String)>) -> FglobsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FglobsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FglobsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (FglobsStatus, String)> {
    if s.is_null() {
        return Err((FglobsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (FglobsStatus::Utf8, format!("{what}: {e}")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn computation(e: fglobs::Error) -> (FglobsStatus, String) {
    let status = match e {
        fglobs::Error::Config(_) | fglobs::Error::Spec(_) | fglobs::Error::Precondition(_) => {
            FglobsStatus::InvalidArgument
        }
        _ => FglobsStatus::Computation,
    };
    (status, e.to_string())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn fglobs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version; static, do not free.
#[no_mangle]
pub extern "C" fn fglobs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Runs a configuration given as JSON (the `--config` schema, including
/// `"command"`).
///
/// # Safety
/// `config_json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fglobs_run_json(config_json: *const c_char, out: *mut *mut FglobsReport) -> FglobsStatus {
    guarded(|| {
        if out.is_null() {
            return Err((FglobsStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let text = read_str(config_json, "config_json")?;
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| (FglobsStatus::InvalidArgument, format!("config: {e}")))?;
        let outcome = run(&cfg).map_err(computation)?;
        *out = Box::into_raw(Box::new(FglobsReport { outcome }));
        Ok(())
    })
}

/// 0 no obstruction, 2 obstruction found; -1 for a null handle.
///
/// # Safety
/// `report` must be NULL or a handle from [`fglobs_run_json`].
#[no_mangle]
pub unsafe extern "C" fn fglobs_report_exit_code(report: *const FglobsReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.outcome.code)
}

/// The report rendered as text (`json` = 0) or JSON (`json` != 0). Free with
/// [`fglobs_string_free`]. Returns NULL for a null handle.
///
/// # Safety
/// `report` must be NULL or a handle from [`fglobs_run_json`].
#[no_mangle]
pub unsafe extern "C" fn fglobs_report_render(report: *const FglobsReport, json: i32) -> *mut c_char {
    match report.as_ref() {
        None => {
            set_error("report is null");
            ptr::null_mut()
        }
        Some(r) => to_c(r.outcome.render(if json != 0 { OutputFormat::Json } else { OutputFormat::Text })),
    }
}

/// # Safety
/// `report` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fglobs_report_free(report: *mut FglobsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// E_n verdict for a preset orientation in the window x ≤ `x_bound`,
/// `t_min` ≤ t ≤ `t_bound`. `n` = 0 means n = ∞.
///
/// # Safety
/// `orientation` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fglobs_obstruct(
    prime: u32,
    n: u32,
    orientation: *const c_char,
    x_bound: u32,
    t_min: i32,
    t_bound: i32,
    out: *mut *mut FglobsVerdict,
) -> FglobsStatus {
    guarded(|| {
        if out.is_null() {
            return Err((FglobsStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let name = read_str(orientation, "orientation")?;
        if x_bound == 0 || t_min > 0 || t_bound < 0 {
            return Err((FglobsStatus::InvalidArgument, "window needs x_bound > 0, t_min <= 0 <= t_bound".into()));
        }
        let level = if n == 0 { Level::Infinite } else { Level::Finite(n) };
        let data = OrientationData::preset(name, prime, Trunc::new(x_bound, t_min, t_bound)).map_err(computation)?;
        let verdict = en_verdict(&data, level).map_err(computation)?;
        *out = Box::into_raw(Box::new(FglobsVerdict { verdict }));
        Ok(())
    })
}

/// Writes the first failing x-degree (0 if none) and the vanishing bound.
///
/// # Safety
/// `verdict` must be a live handle; the out pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn fglobs_verdict_summary(
    verdict: *const FglobsVerdict,
    first_failure: *mut u32,
    tbd: *mut i32,
) -> FglobsStatus {
    guarded(|| {
        let v = verdict.as_ref().ok_or((FglobsStatus::NullPointer, "verdict is null".to_string()))?;
        if let Some(f) = first_failure.as_mut() {
            *f = v.verdict.first_failure.unwrap_or(0);
        }
        if let Some(t) = tbd.as_mut() {
            *t = v.verdict.tbd;
        }
        Ok(())
    })
}

/// The remainder mod p at x^`x_degree`, e.g. "β^10·t^4"; NULL if out of range.
///
/// # Safety
/// `verdict` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fglobs_verdict_remainder(verdict: *const FglobsVerdict, x_degree: u32) -> *mut c_char {
    match verdict.as_ref().and_then(|v| v.verdict.slice(x_degree)) {
        Some(s) => to_c(s.remainder_mod_p.display_text()),
        None => {
            set_error(format!("no slice at x^{x_degree}"));
            ptr::null_mut()
        }
    }
}

/// The verdict as JSON; free with [`fglobs_string_free`].
///
/// # Safety
/// `verdict` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fglobs_verdict_json(verdict: *const FglobsVerdict) -> *mut c_char {
    match verdict.as_ref() {
        Some(v) => to_c(v.verdict.to_json().to_string()),
        None => {
            set_error("verdict is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `verdict` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fglobs_verdict_free(verdict: *mut FglobsVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fglobs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
