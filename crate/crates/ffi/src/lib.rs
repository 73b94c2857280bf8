//! C ABI over the group and check APIs.
//!
//! Every fallible function returns a [`SpincoverStatus`] and writes its result
//! through an out pointer. On failure a message is stored per thread and can
//! be fetched with [`spincover_last_error`]. Strings returned by this library
//! must be released with [`spincover_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spincover::checks::{run_criterion, CheckError, CheckOptions, Groups, CRITERIA};
use spincover::group::{Element, GroupCtx, GroupError};
use spincover::hyperocta::theta_element;
use spincover::words::{parse_word, Variant};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpincoverStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    Enumeration = 4,
    InvalidElement = 5,
    InvalidWord = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Presentation variant selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpincoverVariant {
    Standard = 0,
    Twisted = 1,
}

/// Opaque handle to an enumerated group. Elements are named by ids `1..=order`,
/// with id 1 the identity.
pub struct SpincoverGroup {
    ctx: GroupCtx,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Failure(SpincoverStatus, String);

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let status = match &e {
            GroupError::InvalidElement { .. } | GroupError::ForeignElement => {
                SpincoverStatus::InvalidElement
            }
            GroupError::Word(_) => SpincoverStatus::InvalidWord,
            GroupError::Enum(_) => SpincoverStatus::Enumeration,
            _ => SpincoverStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        let status = match e {
            CheckError::UnknownCriterion(_) => SpincoverStatus::InvalidArgument,
            _ => SpincoverStatus::Enumeration,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SpincoverStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpincoverStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SpincoverStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SpincoverStatus::Panic
        }
    }
}

unsafe fn group_ref<'a>(g: *const SpincoverGroup) -> Result<&'a GroupCtx, Failure> {
    // SAFETY: the caller passes a handle from `spincover_group_new` or null.
    unsafe { g.as_ref() }
        .map(|g| &g.ctx)
        .ok_or_else(|| null("group"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null; the caller guarantees it is writable.
    unsafe { out.write(v) };
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

fn element(g: &GroupCtx, id: usize) -> Result<Element, Failure> {
    Ok(g.element(id)?)
}

/// Message of the last failed call on this thread, or null. Caller frees.
#[no_mangle]
pub extern "C" fn spincover_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(std::ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spincover_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn spincover_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Enumerates the group of rank `n` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_new(
    n: usize,
    variant: SpincoverVariant,
    out: *mut *mut SpincoverGroup,
) -> SpincoverStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let v = match variant {
            SpincoverVariant::Standard => Variant::Standard,
            SpincoverVariant::Twisted => Variant::Twisted,
        };
        let ctx = GroupCtx::new(n, v)?;
        // SAFETY: checked non-null above.
        unsafe { write(out, Box::into_raw(Box::new(SpincoverGroup { ctx }))) }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from `spincover_group_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_free(g: *mut SpincoverGroup) {
    if !g.is_null() {
        // SAFETY: produced by `Box::into_raw` in `spincover_group_new`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Rank `n` of the group.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_rank(
    g: *const SpincoverGroup,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| unsafe { write(out, group_ref(g)?.rank()) })
}

/// Number of elements.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_order(
    g: *const SpincoverGroup,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| unsafe { write(out, group_ref(g)?.order()) })
}

/// Id of the element represented by a word such as `"R1 R2^-1"`.
///
/// # Safety
/// `g` must be a live handle, `word` a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_element_from_word(
    g: *const SpincoverGroup,
    word: *const c_char,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        if word.is_null() {
            return Err(null("word"));
        }
        // SAFETY: checked non-null; the caller guarantees nul termination.
        let text = unsafe { CStr::from_ptr(word) }
            .to_str()
            .map_err(|e| Failure(SpincoverStatus::InvalidUtf8, e.to_string()))?;
        let w = parse_word(text, g.rank()).map_err(GroupError::from)?;
        let e = g.element_from_word(&w)?;
        unsafe { write(out, e.id()) }
    })
}

/// Id of the product `a b` (`b` acts first).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_multiply(
    g: *const SpincoverGroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let p = g.multiply(element(g, a)?, element(g, b)?)?;
        unsafe { write(out, p.id()) }
    })
}

/// Id of the inverse.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_inverse(
    g: *const SpincoverGroup,
    a: usize,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let e = g.inverse(element(g, a)?)?;
        unsafe { write(out, e.id()) }
    })
}

/// Order of an element.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_element_order(
    g: *const SpincoverGroup,
    a: usize,
    out: *mut usize,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let k = g.element_order(element(g, a)?)?;
        unsafe { write(out, k) }
    })
}

/// Canonical label of an element as a new string. Caller frees.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_label(
    g: *const SpincoverGroup,
    a: usize,
    out: *mut *mut c_char,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let s = g.label(element(g, a)?)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        unsafe { write(out, into_c_string(s)) }
    })
}

/// Signed permutation image of an element: `out[c]` is the signed 1-based
/// image of axis `c + 1`. `len` must be at least the rank.
///
/// # Safety
/// `g` must be a live handle and `out` writable for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn spincover_group_theta(
    g: *const SpincoverGroup,
    a: usize,
    out: *mut i32,
    len: usize,
) -> SpincoverStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let p = theta_element(g, element(g, a)?)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        if len < p.n() {
            return Err(Failure(
                SpincoverStatus::BufferTooSmall,
                format!("buffer holds {len} entries, need {}", p.n()),
            ));
        }
        // SAFETY: checked non-null; the caller guarantees `len` entries.
        let dst = unsafe { std::slice::from_raw_parts_mut(out, len) };
        dst[..p.n()].copy_from_slice(p.images());
        Ok(())
    })
}

/// Number of acceptance criteria.
#[no_mangle]
pub extern "C" fn spincover_criteria_count() -> usize {
    CRITERIA
}

/// Runs criterion `k` with default options and `seed`. Writes whether it
/// passed and, if `report` is non-null, its text report. Caller frees.
///
/// # Safety
/// `passed` must be writable; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn spincover_verify(
    k: usize,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> SpincoverStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null("output pointer"));
        }
        let opts = CheckOptions {
            seed,
            ..CheckOptions::default()
        };
        let r = run_criterion(k, &Groups::new(), &opts)?;
        unsafe { write(passed, r.pass)? };
        if !report.is_null() {
            unsafe { write(report, into_c_string(r.to_text()))? };
        }
        Ok(())
    })
}
