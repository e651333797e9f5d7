//! C ABI over `bwm-core`.
//!
//! Systems and reports are opaque heap handles owned by the caller and
//! released with `bwm_pcs_free` / `bwm_report_free`. Every fallible call
//! returns a [`BwmStatus`]; on failure `bwm_last_error` describes the most
//! recent error on the calling thread. Criterion indices are 0-based.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bwm_core::error::BwmError;
use bwm_core::io::parse_pcs;
use bwm_core::model::PairwiseComparisonSystem;
use bwm_core::report::{analyze, render, AnalysisOptions, AnalysisReport};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    RoleError = 5,
    IndexOutOfRange = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A validated comparison system.
pub struct BwmPcs(PairwiseComparisonSystem);

/// The analysis of a comparison system.
pub struct BwmReport(AnalysisReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: BwmStatus, message: impl Into<String>) -> BwmStatus {
    set_error(message);
    status
}

fn from_core(e: BwmError) -> BwmStatus {
    let status = match &e {
        BwmError::Parse(_) => BwmStatus::Parse,
        BwmError::IndexNotInD { .. } => BwmStatus::IndexOutOfRange,
        e if e.is_role_error() => BwmStatus::RoleError,
        _ => BwmStatus::InvalidInput,
    };
    fail(status, format!("{}: {e}", e.code()))
}

fn guard(f: impl FnOnce() -> BwmStatus) -> BwmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(BwmStatus::Panic, "internal panic"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(BwmStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bwm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bwm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a system from JSON or CSV text.
#[no_mangle]
pub unsafe extern "C" fn bwm_pcs_parse(text: *const c_char, out: *mut *mut BwmPcs) -> BwmStatus {
    guard(|| {
        non_null!(text, out);
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(BwmStatus::InvalidUtf8, "input is not UTF-8");
        };
        match parse_pcs(text, None) {
            Ok(pcs) => {
                *out = Box::into_raw(Box::new(BwmPcs(pcs)));
                BwmStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Build a system from `n` best-to-other and other-to-worst entries and
/// 0-based best and worst index lists.
#[no_mangle]
pub unsafe extern "C" fn bwm_pcs_new(
    n: usize,
    best_to_other: *const f64,
    other_to_worst: *const f64,
    best: *const usize,
    n_best: usize,
    worst: *const usize,
    n_worst: usize,
    out: *mut *mut BwmPcs,
) -> BwmStatus {
    guard(|| {
        non_null!(best_to_other, other_to_worst, best, worst, out);
        let bto = std::slice::from_raw_parts(best_to_other, n).to_vec();
        let otw = std::slice::from_raw_parts(other_to_worst, n).to_vec();
        let best = std::slice::from_raw_parts(best, n_best);
        let worst = std::slice::from_raw_parts(worst, n_worst);
        match PairwiseComparisonSystem::new(bto, otw, best, worst) {
            Ok(pcs) => {
                *out = Box::into_raw(Box::new(BwmPcs(pcs)));
                BwmStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bwm_pcs_free(pcs: *mut BwmPcs) {
    if !pcs.is_null() {
        drop(Box::from_raw(pcs));
    }
}

/// Number of criteria, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bwm_pcs_len(pcs: *const BwmPcs) -> usize {
    pcs.as_ref().map_or(0, |p| p.0.n())
}

/// Analyze a system. `legacy` adds the legacy closed forms, `verify` runs
/// the oracle cross-check.
#[no_mangle]
pub unsafe extern "C" fn bwm_analyze(
    pcs: *const BwmPcs,
    legacy: bool,
    verify: bool,
    out: *mut *mut BwmReport,
) -> BwmStatus {
    guard(|| {
        non_null!(pcs, out);
        let options = AnalysisOptions {
            legacy,
            verify,
            round: None,
        };
        let report = analyze(&(*pcs).0, &options);
        *out = Box::into_raw(Box::new(BwmReport(report)));
        BwmStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn bwm_report_free(report: *mut BwmReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn scalar(
    report: *const BwmReport,
    out: *mut f64,
    get: impl FnOnce(&AnalysisReport) -> f64,
) -> BwmStatus {
    guard(|| {
        non_null!(report, out);
        *out = get(&(*report).0);
        BwmStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn bwm_report_epsilon_star(
    report: *const BwmReport,
    out: *mut f64,
) -> BwmStatus {
    scalar(report, out, |r| r.epsilon_star)
}

#[no_mangle]
pub unsafe extern "C" fn bwm_report_abw_star(report: *const BwmReport, out: *mut f64) -> BwmStatus {
    scalar(report, out, |r| r.abw_star)
}

#[no_mangle]
pub unsafe extern "C" fn bwm_report_ci(report: *const BwmReport, out: *mut f64) -> BwmStatus {
    scalar(report, out, |r| r.ci)
}

/// Consistency ratio; NaN when it is undefined.
#[no_mangle]
pub unsafe extern "C" fn bwm_report_cr(report: *const BwmReport, out: *mut f64) -> BwmStatus {
    scalar(report, out, |r| r.cr.unwrap_or(f64::NAN))
}

/// Number of criteria in the report, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bwm_report_len(report: *const BwmReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.names.len())
}

/// Copy the best weights into `out[0..len]`; `len` must be at least the
/// criterion count.
#[no_mangle]
pub unsafe extern "C" fn bwm_report_best_weights(
    report: *const BwmReport,
    out: *mut f64,
    len: usize,
) -> BwmStatus {
    guard(|| {
        non_null!(report, out);
        let w = (*report).0.best_weights.as_slice();
        if len < w.len() {
            return fail(
                BwmStatus::BufferTooSmall,
                format!("need {} slots, got {len}", w.len()),
            );
        }
        std::slice::from_raw_parts_mut(out, w.len()).copy_from_slice(w);
        BwmStatus::Ok
    })
}

/// Copy interval bounds into `lower[0..len]` and `upper[0..len]`.
#[no_mangle]
pub unsafe extern "C" fn bwm_report_intervals(
    report: *const BwmReport,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> BwmStatus {
    guard(|| {
        non_null!(report, lower, upper);
        let iv = (*report).0.intervals.as_slice();
        if len < iv.len() {
            return fail(
                BwmStatus::BufferTooSmall,
                format!("need {} slots, got {len}", iv.len()),
            );
        }
        let lo = std::slice::from_raw_parts_mut(lower, iv.len());
        let hi = std::slice::from_raw_parts_mut(upper, iv.len());
        for (k, i) in iv.iter().enumerate() {
            lo[k] = i.lower;
            hi[k] = i.upper;
        }
        BwmStatus::Ok
    })
}

/// Render the report as JSON. `round < 0` keeps full precision. Release the
/// string with `bwm_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bwm_report_to_json(
    report: *const BwmReport,
    round: i32,
    out: *mut *mut c_char,
) -> BwmStatus {
    guard(|| {
        non_null!(report, out);
        let digits = u32::try_from(round).ok();
        let text = render(&(*report).0, digits);
        match CString::new(text) {
            Ok(s) => {
                *out = s.into_raw();
                BwmStatus::Ok
            }
            Err(_) => fail(BwmStatus::Panic, "report JSON contains NUL"),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bwm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Consistency index for a best-to-worst ratio of at least 1.
#[no_mangle]
pub unsafe extern "C" fn bwm_consistency_index(abw: f64, out: *mut f64) -> BwmStatus {
    guard(|| {
        non_null!(out);
        match bwm_core::consistency::consistency_index(abw) {
            Ok(ci) => {
                *out = ci;
                BwmStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}
