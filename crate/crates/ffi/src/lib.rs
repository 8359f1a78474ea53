//! C ABI for the equicoh engine.
//!
//! Every entry point returns an [`EquicohStatus`]. Results come back through opaque handles;
//! strings handed out by the library are released with [`equicoh_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use equicoh::io::{self, ExampleParams, Format, ResultReport, TaskError};
use equicoh::lie::{lie_cohomology, LieAlgebra, Representation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquicohStatus {
    Ok = 0,
    /// The input violates the schema; same code as the CLI exit status.
    Schema = 2,
    /// A mathematical check failed (Jacobi, axioms, uncertified bivector).
    Math = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquicohFormat {
    Json = 0,
    Csv = 1,
}

/// A computed result document.
pub struct EquicohReport {
    inner: ResultReport,
}

/// A validated Lie algebra.
pub struct EquicohAlgebra {
    inner: LieAlgebra,
}

static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
    Ok(s) => s,
    Err(_) => panic!("version string"),
};

fn status_of(e: &TaskError) -> EquicohStatus {
    match e.exit_code() {
        io::EXIT_MATH => EquicohStatus::Math,
        _ => EquicohStatus::Schema,
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Writes the error document to `err` when the caller asked for it.
unsafe fn report_error(e: &TaskError, err: *mut *mut c_char) -> EquicohStatus {
    if !err.is_null() {
        *err = to_c_string(e.to_json().to_string());
    }
    status_of(e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, EquicohStatus> {
    if p.is_null() {
        return Err(EquicohStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| EquicohStatus::InvalidUtf8)
}

fn guard(f: impl FnOnce() -> EquicohStatus) -> EquicohStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(EquicohStatus::Panic)
}

unsafe fn emit_report(res: Result<ResultReport, TaskError>, out: *mut *mut EquicohReport, err: *mut *mut c_char) -> EquicohStatus {
    match res {
        Ok(r) => {
            *out = Box::into_raw(Box::new(EquicohReport { inner: r }));
            EquicohStatus::Ok
        }
        Err(e) => report_error(&e, err),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn equicoh_version() -> *const c_char {
    VERSION.as_ptr()
}

/// Runs a task document (`{"kind", "payload", "options"?}`).
///
/// # Safety
/// `task_json` must be a NUL-terminated string. `out` must be writable; `err` may be null.
#[no_mangle]
pub unsafe extern "C" fn equicoh_compute(
    task_json: *const c_char,
    out: *mut *mut EquicohReport,
    err: *mut *mut c_char,
) -> EquicohStatus {
    guard(|| {
        if out.is_null() {
            return EquicohStatus::NullArgument;
        }
        let text = match read_str(task_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        emit_report(io::run_file(text, None, &io::Options::default()), out, err)
    })
}

/// Runs a named example. `params_json` may be null or an object with the example parameters.
///
/// # Safety
/// String arguments must be NUL-terminated. `out` must be writable; `err` may be null.
#[no_mangle]
pub unsafe extern "C" fn equicoh_example(
    name: *const c_char,
    params_json: *const c_char,
    out: *mut *mut EquicohReport,
    err: *mut *mut c_char,
) -> EquicohStatus {
    guard(|| {
        if out.is_null() {
            return EquicohStatus::NullArgument;
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let params = if params_json.is_null() {
            Ok(ExampleParams::default())
        } else {
            match read_str(params_json) {
                Ok(t) => io::Doc::parse(t).and_then(|d| ExampleParams::from_json(&d.root())),
                Err(s) => return s,
            }
        };
        emit_report(params.and_then(|p| io::run_example(name, &p)), out, err)
    })
}

/// Schema check plus the cheap mathematical gates. A report whose gates fail is still returned
/// with status `Ok`; query it with [`equicoh_report_passed`].
///
/// # Safety
/// As for [`equicoh_compute`].
#[no_mangle]
pub unsafe extern "C" fn equicoh_validate(
    task_json: *const c_char,
    out: *mut *mut EquicohReport,
    err: *mut *mut c_char,
) -> EquicohStatus {
    guard(|| {
        if out.is_null() {
            return EquicohStatus::NullArgument;
        }
        match read_str(task_json) {
            Ok(text) => emit_report(io::validate_input(text), out, err),
            Err(s) => s,
        }
    })
}

/// True when every check in the report passed.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn equicoh_report_passed(report: *const EquicohReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.passed())
}

/// Copies the headline dimension table into `buf`. `len` receives the table length even when
/// the buffer is too small; a report with no headline table has length zero.
///
/// # Safety
/// `report` must be a live handle, `len` writable, and `buf` valid for `cap` elements (or null if `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn equicoh_report_dims(
    report: *const EquicohReport,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> EquicohStatus {
    let (Some(r), false) = (report.as_ref(), len.is_null()) else {
        return EquicohStatus::NullArgument;
    };
    let dims = r.inner.dims.as_deref().unwrap_or(&[]);
    write_dims(dims, buf, cap, len)
}

unsafe fn write_dims(dims: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> EquicohStatus {
    *len = dims.len();
    if dims.len() > cap {
        return EquicohStatus::BufferTooSmall;
    }
    if !dims.is_empty() {
        if buf.is_null() {
            return EquicohStatus::NullArgument;
        }
        ptr::copy_nonoverlapping(dims.as_ptr(), buf, dims.len());
    }
    EquicohStatus::Ok
}

/// Renders the report; release the result with [`equicoh_string_free`].
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn equicoh_report_render(report: *const EquicohReport, format: EquicohFormat) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        return ptr::null_mut();
    };
    let f = match format {
        EquicohFormat::Json => Format::Json,
        EquicohFormat::Csv => Format::Csv,
    };
    to_c_string(r.inner.render(f))
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equicoh_report_free(report: *mut EquicohReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parses and validates a Lie algebra: a name (`"su2"`, `"heisenberg"`, `"abelian-3"`) in JSON
/// quotes, or `{"dim", "brackets"}`.
///
/// # Safety
/// As for [`equicoh_compute`].
#[no_mangle]
pub unsafe extern "C" fn equicoh_algebra_new(
    json: *const c_char,
    out: *mut *mut EquicohAlgebra,
    err: *mut *mut c_char,
) -> EquicohStatus {
    guard(|| {
        if out.is_null() {
            return EquicohStatus::NullArgument;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::Doc::parse(text).and_then(|d| io::schema::algebra(&d.root())) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(EquicohAlgebra { inner: g }));
                EquicohStatus::Ok
            }
            Err(e) => report_error(&e, err),
        }
    })
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn equicoh_algebra_dim(g: *const EquicohAlgebra) -> usize {
    g.as_ref().map_or(0, |g| g.inner.dim())
}

/// Dimensions of the Lie algebra cohomology with trivial coefficients, written as for
/// [`equicoh_report_dims`].
///
/// # Safety
/// `g` must be a live handle; `buf`, `cap` and `len` as for [`equicoh_report_dims`].
#[no_mangle]
pub unsafe extern "C" fn equicoh_algebra_cohomology(
    g: *const EquicohAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> EquicohStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), len.is_null()) else {
            return EquicohStatus::NullArgument;
        };
        let rep = Representation::trivial(&g.inner, 1);
        match lie_cohomology(&g.inner, None, &rep, false) {
            Ok(h) => write_dims(&h.dims, buf, cap, len),
            Err(e) => status_of(&e.into()),
        }
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equicoh_algebra_free(g: *mut EquicohAlgebra) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equicoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
