//! C interface to latcheck.
//!
//! Every function returns a `LatcheckStatus`; results go through out-pointers.
//! On failure `latcheck_last_error` returns a message for the calling thread.
//! Strings handed out by the library are released with `latcheck_string_free`,
//! lattices with `latcheck_lattice_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latcheck::freeterm::{self, FreeTerm};
use latcheck::{catalog, decomp, io, laws, report, variety, Error, FiniteLattice};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatcheckStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotALattice = 4,
    UnknownName = 5,
    OutOfRange = 6,
    BudgetExceeded = 7,
    SizeLimit = 8,
    InvalidArgument = 9,
    Panic = 10,
}

/// Opaque lattice handle.
pub struct LatcheckLattice {
    inner: FiniteLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

fn status_of(e: &Error) -> LatcheckStatus {
    match e {
        Error::Parse { .. } => LatcheckStatus::ParseError,
        Error::DuplicateLabel(_)
        | Error::UnknownLabel(_)
        | Error::SelfCover(_)
        | Error::DuplicateCover(..)
        | Error::CyclicCovers(_)
        | Error::Empty
        | Error::NotALattice(..) => LatcheckStatus::NotALattice,
        Error::UnknownName(_) | Error::UnknownProfile(_) | Error::UnknownTheorem(_) => LatcheckStatus::UnknownName,
        Error::BadIndex(_) => LatcheckStatus::OutOfRange,
        Error::SearchBudgetExceeded(_) => LatcheckStatus::BudgetExceeded,
        Error::SizeLimit { .. } => LatcheckStatus::SizeLimit,
        _ => LatcheckStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (LatcheckStatus, String)>) -> LatcheckStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LatcheckStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LatcheckStatus::Panic
        }
    }
}

type Fallible<T> = Result<T, (LatcheckStatus, String)>;

fn lib<T>(r: latcheck::Result<T>) -> Fallible<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LatcheckStatus, String) {
    (LatcheckStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (LatcheckStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn lattice<'a>(p: *const LatcheckLattice) -> Fallible<&'a FiniteLattice> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("lattice"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Fallible<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Fallible<()> {
    let c = CString::new(s).map_err(|_| (LatcheckStatus::InvalidArgument, "string contains nul".to_string()))?;
    put(out, c.into_raw())
}

unsafe fn put_lattice(out: *mut *mut LatcheckLattice, l: FiniteLattice) -> Fallible<()> {
    put(out, Box::into_raw(Box::new(LatcheckLattice { inner: l })))
}

fn elem(l: &FiniteLattice, a: usize) -> Fallible<usize> {
    if a < l.len() {
        Ok(a)
    } else {
        Err((LatcheckStatus::OutOfRange, format!("element index {a} out of range")))
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn latcheck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn latcheck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a lattice from the JSON file format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_parse(json: *const c_char, out: *mut *mut LatcheckLattice) -> LatcheckStatus {
    guard(|| {
        let l = lib(io::parse_lattice(text(json, "json")?))?;
        put_lattice(out, l)
    })
}

/// Looks up a catalog entry such as `N5`, `grid(2,3)` or `chain(4)`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_from_catalog(
    name: *const c_char,
    out: *mut *mut LatcheckLattice,
) -> LatcheckStatus {
    guard(|| {
        let l = lib(catalog::get(text(name, "name")?))?;
        put_lattice(out, l)
    })
}

/// # Safety
/// `l` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_free(l: *mut LatcheckLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_len(l: *const LatcheckLattice, out: *mut usize) -> LatcheckStatus {
    guard(|| put(out, lattice(l)?.len()))
}

/// Index of the element with the given label.
///
/// # Safety
/// `l` must be a live handle, `label` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_index_of(
    l: *const LatcheckLattice,
    label: *const c_char,
    out: *mut usize,
) -> LatcheckStatus {
    guard(|| {
        let l = lattice(l)?;
        let a = lib(l.elem(text(label, "label")?))?;
        put(out, a)
    })
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_leq(
    l: *const LatcheckLattice,
    a: usize,
    b: usize,
    out: *mut bool,
) -> LatcheckStatus {
    guard(|| {
        let l = lattice(l)?;
        put(out, l.leq(elem(l, a)?, elem(l, b)?))
    })
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_meet(
    l: *const LatcheckLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> LatcheckStatus {
    guard(|| {
        let l = lattice(l)?;
        put(out, l.meet(elem(l, a)?, elem(l, b)?))
    })
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_join(
    l: *const LatcheckLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> LatcheckStatus {
    guard(|| {
        let l = lattice(l)?;
        put(out, l.join(elem(l, a)?, elem(l, b)?))
    })
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_is_whitman(l: *const LatcheckLattice, out: *mut bool) -> LatcheckStatus {
    guard(|| put(out, laws::whitman(lattice(l)?)))
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_is_semidistributive(l: *const LatcheckLattice, out: *mut bool) -> LatcheckStatus {
    guard(|| put(out, laws::is_semidistributive(lattice(l)?)))
}

/// Membership in the variety generated by the pentagon.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_is_in_n5_variety(l: *const LatcheckLattice, out: *mut bool) -> LatcheckStatus {
    guard(|| {
        let v = lib(variety::is_in_n5_variety(lattice(l)?))?;
        put(out, v)
    })
}

/// Fewest blocks in a partition into distributive sublattices.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_dec(l: *const LatcheckLattice, out: *mut usize) -> LatcheckStatus {
    guard(|| {
        let d = lib(decomp::dec(lattice(l)?))?;
        put(out, d.value)
    })
}

/// Law profile as JSON. Free the result with `latcheck_string_free`.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_law_profile_json(l: *const LatcheckLattice, out: *mut *mut c_char) -> LatcheckStatus {
    guard(|| {
        let v = report::law_profile_json(lattice(l)?);
        put_string(out, serde_json::to_string(&v).expect("values serialize"))
    })
}

/// The lattice in the JSON file format. Free the result with `latcheck_string_free`.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_lattice_to_json(l: *const LatcheckLattice, out: *mut *mut c_char) -> LatcheckStatus {
    guard(|| put_string(out, io::write_lattice(lattice(l)?)))
}

/// Decides `s <= t` in the free lattice.
///
/// # Safety
/// `s` and `t` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_free_leq(s: *const c_char, t: *const c_char, out: *mut bool) -> LatcheckStatus {
    guard(|| {
        let a = lib(FreeTerm::parse(text(s, "s")?))?;
        let b = lib(FreeTerm::parse(text(t, "t")?))?;
        put(out, freeterm::leq(&a, &b))
    })
}

/// Canonical form of a free-lattice term. Free the result with `latcheck_string_free`.
///
/// # Safety
/// `term` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latcheck_free_canonical(term: *const c_char, out: *mut *mut c_char) -> LatcheckStatus {
    guard(|| {
        let t = lib(FreeTerm::parse(text(term, "term")?))?;
        put_string(out, freeterm::canonicalize(&t).to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn latcheck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        assert_eq!(status_of(&Error::Empty), LatcheckStatus::NotALattice);
        assert_eq!(status_of(&Error::SearchBudgetExceeded(3)), LatcheckStatus::BudgetExceeded);
        assert_eq!(guard(|| Err((LatcheckStatus::OutOfRange, "x".into()))), LatcheckStatus::OutOfRange);
        assert!(!latcheck_last_error().is_null());
        assert_eq!(guard(|| panic!("boom")), LatcheckStatus::Panic);
        assert_eq!(guard(|| Ok(())), LatcheckStatus::Ok);
        assert!(latcheck_last_error().is_null());
    }
}
