//! C ABI over the wittsum pipeline: parse a job, run a command, read the JSON report.
//!
//! Handles are opaque and owned by the caller until passed to the matching `*_free`.
//! Strings returned by the library stay valid until the owning handle is freed
//! (or, for [`ws_last_error_message`], until the next failing call on the same thread).

use libc::{c_char, c_int};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use wittsum::cli::{run, Command, JobSpec, Report, RunOptions};

pub const WS_OK: c_int = 0;
pub const WS_VERDICT_FAILED: c_int = 1;
pub const WS_INPUT_ERROR: c_int = 2;
pub const WS_BUDGET_REFUSED: c_int = 3;
pub const WS_NULL_POINTER: c_int = 10;
pub const WS_INVALID_UTF8: c_int = 11;
pub const WS_INVALID_ARGUMENT: c_int = 12;
pub const WS_INTERNAL: c_int = 13;

/// A validated job.
pub struct WsJob {
    spec: JobSpec,
}

/// The outcome of one run.
pub struct WsReport {
    exit_code: c_int,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            WS_INTERNAL
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, c_int> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(WS_NULL_POINTER);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        WS_INVALID_UTF8
    })
}

/// Parses and validates a JSON job. On success `*out` receives a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ws_job_parse(json: *const c_char, out: *mut *mut WsJob) -> c_int {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return WS_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match JobSpec::parse(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(WsJob { spec }));
                WS_OK
            }
            Err(e) => {
                set_error(e.to_string());
                WS_INPUT_ERROR
            }
        }
    })
}

/// # Safety
/// `job` must come from [`ws_job_parse`] and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ws_job_free(job: *mut WsJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Runs `command` (decompose, polytope, nondegen, sums, lfunction, verify).
/// Returns the report's exit code (0 to 3), or a status >= 10 on
/// misuse; `*out` always receives a report when the return value is below 10.
///
/// # Safety
/// `job` must be a live handle, `command` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ws_run(job: *const WsJob, command: *const c_char, threads: u32, out: *mut *mut WsReport) -> c_int {
    guarded(|| {
        if out.is_null() || job.is_null() {
            set_error("null pointer argument");
            return WS_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let cmd: Command = match read_str(command).map(str::parse) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) => {
                set_error(e);
                return WS_INVALID_ARGUMENT;
            }
            Err(code) => return code,
        };
        let report: Report = run(&(*job).spec, cmd, &RunOptions { threads: threads.max(1) as usize, timings: false });
        if let Some(e) = &report.error {
            set_error(e.message.clone());
        }
        let exit_code = report.exit_code as c_int;
        let json = CString::new(report.to_json()).unwrap_or_default();
        *out = Box::into_raw(Box::new(WsReport { exit_code, json }));
        exit_code
    })
}

/// The report as JSON; owned by the report.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ws_report_json(report: *const WsReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    (*report).json.as_ptr()
}

/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ws_report_exit_code(report: *const WsReport) -> c_int {
    if report.is_null() {
        return WS_NULL_POINTER;
    }
    (*report).exit_code
}

/// # Safety
/// `report` must come from [`ws_run`] and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ws_report_free(report: *mut WsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message of the most recent failure on this thread (empty if none).
#[no_mangle]
pub extern "C" fn ws_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn ws_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
