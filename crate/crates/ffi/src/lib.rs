//! C ABI for `pfaflab`.
//!
//! Objects cross the boundary as opaque handles created by `pfl_*` functions
//! and released with the matching `*_free`. Fallible calls return a
//! [`PflStatus`]; the message of the last failure on the calling thread is
//! available from [`pfl_last_error`]. Strings returned to C are owned by the
//! caller and released with [`pfl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pfaflab::cli::{run_check, RunConfig};
use pfaflab::diagrams::{enumerate_sym_tl, SymTLDiagram, DEFAULT_DIAGRAM_BOUND};
use pfaflab::exact_poly::ExactPolynomial;
use pfaflab::pfaffian_core::{pfaffian_full, SkewArray};
use pfaflab::pfaffinants::{diagram_pfaffinant, tl_pfaffinant};
use pfaflab::schur_q::{parse_shape, schur_q};
use pfaflab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PflStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BoundExceeded = 3,
    IdentityFailure = 4,
    Io = 5,
    Panic = 6,
}

/// An exact polynomial.
pub struct PflPolynomial(ExactPolynomial);

/// A symmetric Temperley-Lieb diagram.
pub struct PflDiagram(SymTLDiagram);

/// A skew-symmetric array of polynomials.
pub struct PflSkewArray(SkewArray);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PflStatus {
    match e {
        Error::BoundExceeded { .. } | Error::InsufficientVariables { .. } => PflStatus::BoundExceeded,
        Error::IdentityFailure(_) => PflStatus::IdentityFailure,
        Error::Io(_) => PflStatus::Io,
        _ => PflStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and the last error.
fn guard<F: FnOnce() -> Result<(), (PflStatus, String)>>(f: F) -> PflStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PflStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PflStatus::Panic
        }
    }
}

fn lib<T>(r: pfaflab::Result<T>) -> Result<T, (PflStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PflStatus, String)> {
    // SAFETY: the caller passes either null or a pointer obtained from this library
    unsafe { p.as_ref() }.ok_or_else(|| (PflStatus::NullPointer, format!("{what} is null")))
}

fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PflStatus, String)> {
    if p.is_null() {
        return Err((PflStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null, and the caller guarantees a NUL-terminated string
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (PflStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn put<T>(out: *mut *mut T, value: T) -> Result<(), (PflStatus, String)> {
    if out.is_null() {
        return Err((PflStatus::NullPointer, "output pointer is null".into()));
    }
    // SAFETY: checked non-null; the caller provides writable storage for one pointer
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (PflStatus, String)> {
    if out.is_null() {
        return Err((PflStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| (PflStatus::InvalidArgument, "string holds NUL".into()))?;
    // SAFETY: checked non-null
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn pfl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn pfl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pfl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The generic `2n × 2n` skew array with entries `a[i,j]`.
#[no_mangle]
pub extern "C" fn pfl_skew_symbolic(n: usize, out: *mut *mut PflSkewArray) -> PflStatus {
    guard(|| {
        if n == 0 || n > 6 {
            return Err((PflStatus::BoundExceeded, format!("n = {n} is outside 1..=6")));
        }
        put(out, PflSkewArray(SkewArray::symbolic(n)))
    })
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pfl_skew_free(a: *mut PflSkewArray) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses a diagram key such as `V[(1,4)(2,3)]` on `2n` points.
///
/// # Safety
/// `key` must be a NUL-terminated string; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_diagram_parse(n: usize, key: *const c_char, out: *mut *mut PflDiagram) -> PflStatus {
    guard(|| {
        let key = c_str(key, "key")?;
        put(out, PflDiagram(lib(SymTLDiagram::parse_key(n, key))?))
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pfl_diagram_free(d: *mut PflDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live diagram handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_diagram_key(d: *const PflDiagram, out: *mut *mut c_char) -> PflStatus {
    guard(|| put_string(out, non_null(d, "diagram")?.0.key()))
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn pfl_diagram_is_even(d: *const PflDiagram) -> bool {
    d.as_ref().is_some_and(|d| d.0.is_even())
}

/// Number of diagrams on `2n` points, or of the even ones.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_count_diagrams(n: usize, even_only: bool, out: *mut usize) -> PflStatus {
    guard(|| {
        if out.is_null() {
            return Err((PflStatus::NullPointer, "output pointer is null".into()));
        }
        let all = lib(enumerate_sym_tl(n, DEFAULT_DIAGRAM_BOUND))?;
        *out = if even_only { all.iter().filter(|d| d.is_even()).count() } else { all.len() };
        Ok(())
    })
}

/// `Pfaf'_D(A)`, or `Pfaf_D(A)` when `tl` is set.
///
/// # Safety
/// `d` and `a` must be live handles; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_pfaffinant(
    d: *const PflDiagram,
    a: *const PflSkewArray,
    tl: bool,
    out: *mut *mut PflPolynomial,
) -> PflStatus {
    guard(|| {
        let (d, a) = (&non_null(d, "diagram")?.0, &non_null(a, "array")?.0);
        let p = if tl { tl_pfaffinant(d, a) } else { diagram_pfaffinant(d, a) };
        put(out, PflPolynomial(lib(p)?))
    })
}

/// # Safety
/// `a` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_pfaffian(a: *const PflSkewArray, out: *mut *mut PflPolynomial) -> PflStatus {
    guard(|| put(out, PflPolynomial(lib(pfaffian_full(&non_null(a, "array")?.0))?)))
}

/// `Q_{λ/μ}` in `k` variables for a shape such as `(3,1)/(2)`.
///
/// # Safety
/// `shape` must be a NUL-terminated string; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_schur_q(shape: *const c_char, k: usize, out: *mut *mut PflPolynomial) -> PflStatus {
    guard(|| {
        let shape = lib(parse_shape(c_str(shape, "shape")?))?;
        put(out, PflPolynomial(lib(schur_q(&shape, k))?))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_polynomial_to_string(p: *const PflPolynomial, out: *mut *mut c_char) -> PflStatus {
    guard(|| put_string(out, non_null(p, "polynomial")?.0.to_string()))
}

/// # Safety
/// `p` and `q` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn pfl_polynomial_equal(p: *const PflPolynomial, q: *const PflPolynomial) -> bool {
    matches!((p.as_ref(), q.as_ref()), (Some(p), Some(q)) if p.0 == q.0)
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pfl_polynomial_free(p: *mut PflPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs a registered check (`pfaflab list`); `n` and `bound` of 0 take the
/// check's defaults. Writes the JSON report to `report` when it is not null.
/// Returns `IdentityFailure` when some case fails.
///
/// # Safety
/// `id` must be a NUL-terminated string; `report` must be null or point to
/// writable storage.
#[no_mangle]
pub unsafe extern "C" fn pfl_verify(id: *const c_char, n: usize, bound: usize, report: *mut *mut c_char) -> PflStatus {
    guard(|| {
        let id = c_str(id, "id")?;
        let config = RunConfig {
            n: (n > 0).then_some(n),
            k: None,
            bound: (bound > 0).then_some(bound),
            format: None,
            cache_dir: None,
            seed: 0,
            no_cache: true,
            jobs: None,
        };
        let r = lib(run_check(id, &config))?;
        if !report.is_null() {
            put_string(report, lib(serde_json::to_string(&r).map_err(Error::from))?)?;
        }
        if r.passed() {
            Ok(())
        } else {
            Err((PflStatus::IdentityFailure, format!("{}: {} of {} cases failed", r.theorem, r.failures.len(), r.cases)))
        }
    })
}
