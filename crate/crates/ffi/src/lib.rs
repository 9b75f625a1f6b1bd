//! C ABI over `lattice_entropy`.
//!
//! Lattices are passed around as opaque [`TeLattice`] handles. Every fallible
//! call returns a [`TeStatus`] and writes results through out-pointers; on
//! failure a message is available from [`te_last_error_message`] on the same
//! thread. Strings returned to the caller must be released with
//! [`te_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use lattice_entropy::catalog;
use lattice_entropy::entropy::{entropy_logdet, mahler_measure, tau_log_fourier, LaurentPoly2};
use lattice_entropy::hyperbolic::{bipyramid_volume, lobachevsky};
use lattice_entropy::invariants::{nu_bar, nu_bipyramid};
use lattice_entropy::lattice_file::LatticeFile;
use lattice_entropy::map::ToroidalMap;
use lattice_entropy::Error;

/// Opaque lattice handle.
pub struct TeLattice {
    map: ToroidalMap,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NonConvergence = 5,
    UnknownName = 6,
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> TeStatus {
    match e {
        Error::UnknownLattice(_) => TeStatus::UnknownName,
        Error::Parse { .. } | Error::Json(_) => TeStatus::Parse,
        Error::BudgetExceeded { .. } => TeStatus::NonConvergence,
        Error::Io { .. } => TeStatus::Internal,
        _ => TeStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), TeStatusError>) -> TeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TeStatus::Ok
        }
        Ok(Err(TeStatusError(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TeStatus::Internal
        }
    }
}

struct TeStatusError(TeStatus, String);

impl From<Error> for TeStatusError {
    fn from(e: Error) -> Self {
        TeStatusError(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> TeStatusError {
    TeStatusError(TeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TeStatusError> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| TeStatusError(TeStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn lattice_arg<'a>(p: *const TeLattice) -> Result<&'a TeLattice, TeStatusError> {
    p.as_ref().ok_or_else(|| null("lattice"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), TeStatusError> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn te_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Looks up a catalog lattice by name or alias.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_from_catalog(name: *const c_char, out: *mut *mut TeLattice) -> TeStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let map = catalog::get(name)?.map;
        write(out, Box::into_raw(Box::new(TeLattice { map })), "out")
    })
}

/// Parses a lattice file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_from_json(json: *const c_char, out: *mut *mut TeLattice) -> TeStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let map = LatticeFile::from_json(text)?.to_map()?;
        write(out, Box::into_raw(Box::new(TeLattice { map })), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `lattice` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_free(lattice: *mut TeLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Vertex, edge and face counts of the fundamental domain. Any out-pointer
/// may be null.
///
/// # Safety
/// Non-null pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_counts(
    lattice: *const TeLattice,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> TeStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        for (p, v) in [
            (vertices, l.map.vertex_count()),
            (edges, l.map.edge_count()),
            (faces, l.map.face_count()),
        ] {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// Bipyramid volume per vertex.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_nu_bipyramid(lattice: *const TeLattice, out: *mut f64) -> TeStatus {
    guard(|| write(out, nu_bipyramid(&lattice_arg(lattice)?.map), "out"))
}

/// Octahedral volume per vertex, `|E| v_oct / |V|`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_nu_bar(lattice: *const TeLattice, out: *mut f64) -> TeStatus {
    guard(|| write(out, nu_bar(&lattice_arg(lattice)?.map), "out"))
}

/// Entropy per fundamental domain by adaptive cubature. `error` may be null.
///
/// # Safety
/// Non-null pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_entropy_logdet(
    lattice: *const TeLattice,
    tol: f64,
    value: *mut f64,
    error: *mut f64,
) -> TeStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        if value.is_null() {
            return Err(null("value"));
        }
        let est = entropy_logdet(&l.map, tol)?;
        value.write(est.value);
        if !error.is_null() {
            error.write(est.error);
        }
        Ok(())
    })
}

/// `log τ` of the `n × n` cover.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_tau_log_fourier(lattice: *const TeLattice, n: usize, out: *mut f64) -> TeStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        if n == 0 {
            return Err(TeStatusError(TeStatus::InvalidInput, "cover size must be positive".into()));
        }
        write(out, tau_log_fourier(&l.map, n), "out")
    })
}

/// Serializes a lattice. Free the result with [`te_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_lattice_to_json(lattice: *const TeLattice, out: *mut *mut c_char) -> TeStatus {
    guard(|| {
        let l = lattice_arg(lattice)?;
        let text = LatticeFile::from_map(&l.map).to_json();
        let c = CString::new(text).map_err(|_| TeStatusError(TeStatus::Internal, "embedded NUL".into()))?;
        write(out, c.into_raw(), "out")
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn te_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Volume of the ideal bipyramid over an `n`-gon.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_bipyramid_volume(n: u64, out: *mut f64) -> TeStatus {
    guard(|| write(out, bipyramid_volume(n)?, "out"))
}

/// Lobachevsky function; NaN for non-finite input.
#[no_mangle]
pub extern "C" fn te_lobachevsky(x: f64) -> f64 {
    lobachevsky(x)
}

/// Mahler measure of a polynomial in the `c a b` line format. `error` may be
/// null.
///
/// # Safety
/// `text` must be NUL-terminated; non-null pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn te_mahler_measure_text(
    text: *const c_char,
    tol: f64,
    value: *mut f64,
    error: *mut f64,
) -> TeStatus {
    guard(|| {
        let p = LaurentPoly2::parse(str_arg(text, "text")?)?;
        if value.is_null() {
            return Err(null("value"));
        }
        let est = mahler_measure(&p, tol)?;
        value.write(est.value);
        if !error.is_null() {
            error.write(est.error);
        }
        Ok(())
    })
}

fn catalog_names() -> &'static [CString] {
    static NAMES: OnceLock<Vec<CString>> = OnceLock::new();
    NAMES.get_or_init(|| {
        catalog::list()
            .into_iter()
            .map(|n| CString::new(n).expect("catalog names have no NUL"))
            .collect()
    })
}

#[no_mangle]
pub extern "C" fn te_catalog_count() -> usize {
    catalog_names().len()
}

/// Static name of catalog entry `i`, or null when out of range.
#[no_mangle]
pub extern "C" fn te_catalog_name(i: usize) -> *const c_char {
    catalog_names().get(i).map_or(ptr::null(), |s| s.as_ptr())
}
