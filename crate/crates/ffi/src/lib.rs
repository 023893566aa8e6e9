//! C ABI for `wreath-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`WreathStatus`]; on failure, [`wreath_last_error`] describes the problem
//! for the calling thread. Structured results are returned as JSON strings
//! owned by the caller and released with [`wreath_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wreath_core::actions::{bernoulli_t, fundamental_action, verify_formal_action, FormalAction};
use wreath_core::cli::ElementRecord;
use wreath_core::extensions::{verify_kk, Extension, KkEmbedding, Section};
use wreath_core::format::{
    load_algebra, load_extension, parse_element, vector_record, LoadError, SeriesRecord,
};
use wreath_core::{Error, LieAlgebra};

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed input text.
    Parse = 3,
    /// Well-formed input describing an invalid object (not a Lie algebra, not an ideal, ...).
    Invalid = 4,
    /// A precondition on degrees or dimensions was not met.
    Precondition = 5,
    Internal = 6,
}

/// A validated Lie algebra.
pub struct WreathAlgebra {
    inner: LieAlgebra,
}

/// An extension `0 → A → C → B → 0` together with a section of `C → B`.
pub struct WreathExtension {
    ext: Extension,
    section: Section,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(WreathStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => WreathStatus::Parse,
            Error::InvalidAlgebra(_)
            | Error::NotAnIdeal(_)
            | Error::InvalidSection(_)
            | Error::NotIndependent => WreathStatus::Invalid,
            _ => WreathStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Input(e) => Failure(WreathStatus::Parse, e.0),
            LoadError::Invalid(e) => e.into(),
        }
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WreathStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WreathStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            WreathStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            WreathStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            WreathStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(WreathStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            WreathStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    *out = value;
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            WreathStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    let text =
        serde_json::to_string(value).map_err(|e| Failure(WreathStatus::Internal, e.to_string()))?;
    *out = CString::new(text)
        .map_err(|e| Failure(WreathStatus::Internal, e.to_string()))?
        .into_raw();
    Ok(())
}

unsafe fn write_flag(out: *mut bool, value: bool) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            WreathStatus::NullArgument,
            "output pointer is null".into(),
        ));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wreath_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wreath_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an algebra file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_algebra_from_json(
    json: *const c_char,
    out: *mut *mut WreathAlgebra,
) -> WreathStatus {
    guard(|| {
        let inner = load_algebra(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(WreathAlgebra { inner })))
    })
}

/// # Safety
/// `alg` must come from [`wreath_algebra_from_json`] and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn wreath_algebra_free(alg: *mut WreathAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra; 0 for null.
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wreath_algebra_dim(alg: *const WreathAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.dim())
}

/// `t_0..t_n` as a JSON array of `"p/q"` strings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_bernoulli(n: usize, out: *mut *mut c_char) -> WreathStatus {
    guard(|| {
        let t = bernoulli_t(n);
        let coeffs: Vec<String> = t
            .as_slice()
            .iter()
            .map(wreath_core::rational::format_rational)
            .collect();
        write_json(out, &coeffs)
    })
}

/// The fundamental action `d_b` through degree `n`, as a JSON series record.
/// `element` is `"c1,c2,..."`.
///
/// # Safety
/// `alg` must be a live handle, `element` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_fundamental_action(
    alg: *const WreathAlgebra,
    element: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> WreathStatus {
    guard(|| {
        let alg = &ref_arg(alg, "algebra")?.inner;
        let b = parse_element(str_arg(element, "element")?, alg.dim())
            .map_err(|e| Failure(WreathStatus::Parse, e.0))?;
        let d = fundamental_action(alg, &b, n)?;
        write_json(out, &SeriesRecord::from_series(&d))
    })
}

/// Whether the fundamental action is a homomorphism through `check_degree`.
///
/// # Safety
/// `alg` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_verify_fundamental(
    alg: *const WreathAlgebra,
    check_degree: usize,
    passed: *mut bool,
) -> WreathStatus {
    guard(|| {
        let alg = &ref_arg(alg, "algebra")?.inner;
        let action = FormalAction::fundamental(alg, check_degree + 1)?;
        write_flag(
            passed,
            verify_formal_action(&action, check_degree)?.passed(),
        )
    })
}

/// Parses an extension file (algebra, ideal and optional section).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_extension_from_json(
    json: *const c_char,
    out: *mut *mut WreathExtension,
) -> WreathStatus {
    guard(|| {
        let (ext, section) = load_extension(str_arg(json, "json")?)?;
        write_out(
            out,
            Box::into_raw(Box::new(WreathExtension { ext, section })),
        )
    })
}

/// # Safety
/// `ext` must come from [`wreath_extension_from_json`] and not have been freed, or be null.
#[no_mangle]
pub unsafe extern "C" fn wreath_extension_free(ext: *mut WreathExtension) {
    if !ext.is_null() {
        drop(Box::from_raw(ext));
    }
}

/// The Kaloujnine-Krasner image of `c` through degree `n`, as a JSON
/// element record `{"series": ..., "point": [...]}`.
///
/// # Safety
/// `ext` must be a live handle, `element` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_kk_embed(
    ext: *const WreathExtension,
    element: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> WreathStatus {
    guard(|| {
        let h = ref_arg(ext, "extension")?;
        let c = parse_element(str_arg(element, "element")?, h.ext.c().dim())
            .map_err(|e| Failure(WreathStatus::Parse, e.0))?;
        let image = KkEmbedding::new(&h.ext, &h.section, n)?.embed(&c, n)?;
        write_json(out, &ElementRecord::from_element(&image))
    })
}

/// Whether the Kaloujnine-Krasner map is an injective homomorphism at order
/// `n` (basis pairs plus `trials` seeded random pairs).
///
/// # Safety
/// `ext` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_verify_kk(
    ext: *const WreathExtension,
    n: usize,
    trials: usize,
    seed: u64,
    passed: *mut bool,
) -> WreathStatus {
    guard(|| {
        let h = ref_arg(ext, "extension")?;
        let report = verify_kk(&h.ext, &h.section, n, trials, seed)?;
        write_flag(passed, report.passed())
    })
}

/// Projection `p(c)` onto the quotient, as a JSON array of `"p/q"` strings.
///
/// # Safety
/// `ext` must be a live handle, `element` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wreath_extension_project(
    ext: *const WreathExtension,
    element: *const c_char,
    out: *mut *mut c_char,
) -> WreathStatus {
    guard(|| {
        let h = ref_arg(ext, "extension")?;
        let c = parse_element(str_arg(element, "element")?, h.ext.c().dim())
            .map_err(|e| Failure(WreathStatus::Parse, e.0))?;
        write_json(out, &vector_record(&h.ext.projection().apply(&c)?))
    })
}
