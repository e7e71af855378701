//! C ABI for the cyclica engine: opaque handles, integer status codes, and a
//! thread-local last-error message.
//!
//! The header for this interface is maintained at `include/cyclica.h`; the
//! `header_and_symbols_agree` test cross-checks the two. Every entry point is
//! panic-safe: a Rust panic is reported as `CYCLICA_ERR_INTERNAL` instead of
//! unwinding across the boundary.
//!
//! Ownership rules: every `*_new`/`*_from_*` out-pointer is owned by the
//! caller and released with the matching `*_free`; strings returned through
//! `char**` are released with `cyclica_string_free`.

use cyclica::algebra::StructureConstantAlgebra;
use cyclica::algebra_complex::{hc_constant, hc_lambda, hc_plain};
use cyclica::correspondence::{verify_corollary_semisimple, CorrespondencePair};
use cyclica::equivariant::hc_equivariant;
use cyclica::hopf::ModuleAlgebraAction;
use cyclica::registry;
use cyclica::report::HcReport;
use cyclica::specfile::SpecFile;
use cyclica::SubalgebraInclusion;
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const CYCLICA_OK: c_int = 0;
pub const CYCLICA_ERR_NULL_POINTER: c_int = 1;
pub const CYCLICA_ERR_UTF8: c_int = 2;
pub const CYCLICA_ERR_BAD_INPUT: c_int = 3;
pub const CYCLICA_ERR_VALIDATION: c_int = 4;
pub const CYCLICA_ERR_COMPUTE: c_int = 5;
pub const CYCLICA_ERR_INTERNAL: c_int = 6;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let sanitized = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("no interior NUL after sanitize");
    });
}

/// Message for the most recent error on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn cyclica_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque algebra handle.
pub struct CyclicaAlgebra {
    inner: StructureConstantAlgebra,
}

/// Opaque module-algebra action handle.
pub struct CyclicaAction {
    inner: ModuleAlgebraAction,
}

/// Opaque cohomology table handle.
pub struct CyclicaReport {
    inner: HcReport,
}

fn guard<F: FnOnce() -> c_int>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            CYCLICA_ERR_INTERNAL
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(CYCLICA_ERR_NULL_POINTER);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        CYCLICA_ERR_UTF8
    })
}

fn require_out<T>(out: *mut *mut T) -> Result<(), c_int> {
    if out.is_null() {
        set_error("null out pointer");
        return Err(CYCLICA_ERR_NULL_POINTER);
    }
    Ok(())
}

/// Resolves a built-in name or a JSON spec text to an algebra.
fn algebra_from_source(source: &str) -> Result<StructureConstantAlgebra, c_int> {
    if let Ok(algebra) = registry::algebra_by_name(source) {
        return Ok(algebra);
    }
    let spec = SpecFile::parse_str(source).map_err(|e| {
        set_error(e.to_string());
        CYCLICA_ERR_BAD_INPUT
    })?;
    let resolved = spec.resolve().map_err(|e| {
        set_error(e.to_string());
        match e {
            cyclica::specfile::SpecError::Validation { .. } => CYCLICA_ERR_VALIDATION,
            _ => CYCLICA_ERR_BAD_INPUT,
        }
    })?;
    Ok(resolved.algebra)
}

fn action_from_source(source: &str) -> Result<ModuleAlgebraAction, c_int> {
    if let Ok(action) = registry::action_by_name(source) {
        return Ok(action);
    }
    let spec = SpecFile::parse_str(source).map_err(|e| {
        set_error(e.to_string());
        CYCLICA_ERR_BAD_INPUT
    })?;
    let resolved = spec.resolve().map_err(|e| {
        set_error(e.to_string());
        match e {
            cyclica::specfile::SpecError::Validation { .. } => CYCLICA_ERR_VALIDATION,
            _ => CYCLICA_ERR_BAD_INPUT,
        }
    })?;
    resolved.action.ok_or_else(|| {
        set_error("spec has no action block");
        CYCLICA_ERR_BAD_INPUT
    })
}

/// Creates an algebra handle from a built-in name or JSON spec text.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclica_algebra_new(
    source: *const c_char,
    out: *mut *mut CyclicaAlgebra,
) -> c_int {
    guard(|| {
        if let Err(code) = require_out(out) {
            return code;
        }
        let source = match read_str(source) {
            Ok(s) => s,
            Err(code) => return code,
        };
        match algebra_from_source(source) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CyclicaAlgebra { inner }));
                CYCLICA_OK
            }
            Err(code) => code,
        }
    })
}

/// # Safety
/// `handle` must come from `cyclica_algebra_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cyclica_algebra_free(handle: *mut CyclicaAlgebra) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the algebra, or −1 for a null handle.
///
/// # Safety
/// `handle` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn cyclica_algebra_dim(handle: *const CyclicaAlgebra) -> c_int {
    if handle.is_null() {
        return -1;
    }
    (*handle).inner.dim() as c_int
}

/// Creates an action handle from a built-in name or JSON spec text.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclica_action_new(
    source: *const c_char,
    out: *mut *mut CyclicaAction,
) -> c_int {
    guard(|| {
        if let Err(code) = require_out(out) {
            return code;
        }
        let source = match read_str(source) {
            Ok(s) => s,
            Err(code) => return code,
        };
        match action_from_source(source) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CyclicaAction { inner }));
                CYCLICA_OK
            }
            Err(code) => code,
        }
    })
}

/// # Safety
/// `handle` must come from `cyclica_action_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cyclica_action_free(handle: *mut CyclicaAction) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[derive(Clone, Copy)]
#[repr(C)]
pub enum CyclicaComplex {
    Plain = 0,
    Lambda = 1,
    ConstantUnit = 2,
    Equivariant = 3,
    CrossedPlain = 4,
    CrossedConstant = 5,
}

fn compute_algebra_table(
    algebra: &StructureConstantAlgebra,
    complex: c_int,
    max_degree: u32,
) -> Result<HcReport, c_int> {
    let max_degree = (max_degree as usize).max(1);
    let run = |r: Result<HcReport, cyclica::cocyclic::CocyclicError>| {
        r.map_err(|e| {
            set_error(e.to_string());
            CYCLICA_ERR_COMPUTE
        })
    };
    match complex {
        x if x == CyclicaComplex::Plain as c_int => run(hc_plain(algebra, max_degree)),
        x if x == CyclicaComplex::Lambda as c_int => run(hc_lambda(algebra, max_degree)),
        x if x == CyclicaComplex::ConstantUnit as c_int => {
            let inc = SubalgebraInclusion::unit_span(algebra);
            run(hc_constant(algebra, &inc, max_degree))
        }
        _ => {
            set_error("complex kind not valid for an algebra handle");
            Err(CYCLICA_ERR_BAD_INPUT)
        }
    }
}

fn compute_action_table(
    action: &ModuleAlgebraAction,
    complex: c_int,
    max_degree: u32,
) -> Result<HcReport, c_int> {
    let max_degree = (max_degree as usize).max(1);
    let compute_err = |e: String| {
        set_error(e);
        CYCLICA_ERR_COMPUTE
    };
    match complex {
        x if x == CyclicaComplex::Equivariant as c_int => {
            hc_equivariant(action, max_degree).map_err(|e| compute_err(e.to_string()))
        }
        x if x == CyclicaComplex::CrossedPlain as c_int => {
            let crossed = action
                .crossed_product()
                .map_err(|e| compute_err(e.to_string()))?;
            hc_plain(&crossed.product, max_degree).map_err(|e| compute_err(e.to_string()))
        }
        x if x == CyclicaComplex::CrossedConstant as c_int => {
            let crossed = action
                .crossed_product()
                .map_err(|e| compute_err(e.to_string()))?;
            hc_constant(&crossed.product, &crossed.include_h, max_degree)
                .map_err(|e| compute_err(e.to_string()))
        }
        _ => {
            set_error("complex kind not valid for an action handle");
            Err(CYCLICA_ERR_BAD_INPUT)
        }
    }
}

/// Computes a cohomology table for an algebra handle
/// (`CYCLICA_COMPLEX_PLAIN`, `_LAMBDA`, or `_CONSTANT_UNIT`).
///
/// # Safety
/// `algebra` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclica_hc_algebra(
    algebra: *const CyclicaAlgebra,
    complex: c_int,
    max_degree: u32,
    out: *mut *mut CyclicaReport,
) -> c_int {
    guard(|| {
        if let Err(code) = require_out(out) {
            return code;
        }
        if algebra.is_null() {
            set_error("null algebra handle");
            return CYCLICA_ERR_NULL_POINTER;
        }
        match compute_algebra_table(&(*algebra).inner, complex, max_degree) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CyclicaReport { inner }));
                CYCLICA_OK
            }
            Err(code) => code,
        }
    })
}

/// Computes a cohomology table for an action handle
/// (`CYCLICA_COMPLEX_EQUIVARIANT`, `_CROSSED_PLAIN`, or `_CROSSED_CONSTANT`).
///
/// # Safety
/// `action` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclica_hc_action(
    action: *const CyclicaAction,
    complex: c_int,
    max_degree: u32,
    out: *mut *mut CyclicaReport,
) -> c_int {
    guard(|| {
        if let Err(code) = require_out(out) {
            return code;
        }
        if action.is_null() {
            set_error("null action handle");
            return CYCLICA_ERR_NULL_POINTER;
        }
        match compute_action_table(&(*action).inner, complex, max_degree) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CyclicaReport { inner }));
                CYCLICA_OK
            }
            Err(code) => code,
        }
    })
}

/// Number of degree rows in a report, or −1 for a null handle.
///
/// # Safety
/// `report` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn cyclica_report_len(report: *const CyclicaReport) -> c_int {
    if report.is_null() {
        return -1;
    }
    (*report).inner.rows.len() as c_int
}

/// `dim HCⁿ` at the given degree, or −1 when absent.
///
/// # Safety
/// `report` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn cyclica_report_hc_dim(report: *const CyclicaReport, degree: u32) -> c_int {
    if report.is_null() {
        return -1;
    }
    (*report)
        .inner
        .dim_at(degree as usize)
        .map(|d| d as c_int)
        .unwrap_or(-1)
}

/// Serializes a report as a JSON string owned by the caller.
///
/// # Safety
/// `report` must be a valid handle; `out` a valid pointer. Release the string
/// with `cyclica_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cyclica_report_to_json(
    report: *const CyclicaReport,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if out.is_null() || report.is_null() {
            set_error("null pointer");
            return CYCLICA_ERR_NULL_POINTER;
        }
        let json = serde_json::to_string(&(*report).inner).expect("report serializes");
        *out = CString::new(json).expect("json has no NUL").into_raw();
        CYCLICA_OK
    })
}

/// # Safety
/// `report` must come from a `cyclica_hc_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cyclica_report_free(report: *mut CyclicaReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must come from `cyclica_report_to_json`/`cyclica_verify_theorem` and
/// not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cyclica_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the full theorem suite (Ψ cyclic, image in constants, two-sided
/// inverse identities, dimension match). Writes 1 into `passed` when every
/// check holds and, if `json_report` is non-null, a JSON report string.
///
/// # Safety
/// `action` must be a valid handle; `passed` a valid pointer; `json_report`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn cyclica_verify_theorem(
    action: *const CyclicaAction,
    max_degree: u32,
    passed: *mut c_int,
    json_report: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if action.is_null() || passed.is_null() {
            set_error("null pointer");
            return CYCLICA_ERR_NULL_POINTER;
        }
        let pair = match CorrespondencePair::build(&(*action).inner, (max_degree as usize).max(1)) {
            Ok(pair) => pair,
            Err(e) => {
                set_error(e.to_string());
                return CYCLICA_ERR_COMPUTE;
            }
        };
        let mut report = pair.verify_cyclic_map();
        report.merge(pair.verify_image_constant());
        report.merge(pair.verify_theorem());
        report.merge(pair.verify_psi_injective());
        match pair.verify_hc_match() {
            Ok((hc_report, _, _)) => report.merge(hc_report),
            Err(e) => {
                set_error(e.to_string());
                return CYCLICA_ERR_COMPUTE;
            }
        }
        *passed = report.passed() as c_int;
        if !json_report.is_null() {
            let json = serde_json::to_string(&report.checks).expect("report serializes");
            *json_report = CString::new(json).expect("json has no NUL").into_raw();
        }
        CYCLICA_OK
    })
}

/// Semisimple corollary gate; writes 1 into `passed` when the constant and
/// plain tables agree (or the check is skipped for declared-non-semisimple H).
///
/// # Safety
/// `action` must be a valid handle; `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclica_verify_corollary(
    action: *const CyclicaAction,
    max_degree: u32,
    passed: *mut c_int,
) -> c_int {
    guard(|| {
        if action.is_null() || passed.is_null() {
            set_error("null pointer");
            return CYCLICA_ERR_NULL_POINTER;
        }
        match verify_corollary_semisimple(&(*action).inner, (max_degree as usize).max(1)) {
            Ok((report, _, _)) => {
                *passed = report.passed() as c_int;
                CYCLICA_OK
            }
            Err(cyclica::correspondence::CorrespondenceError::NotDeclaredSemisimple) => {
                set_error("the Hopf algebra does not declare a semisimple flag");
                CYCLICA_ERR_BAD_INPUT
            }
            Err(e) => {
                set_error(e.to_string());
                CYCLICA_ERR_COMPUTE
            }
        }
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cyclica_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
