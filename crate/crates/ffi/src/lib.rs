//! C ABI over `scl-core`.
//!
//! Words and results are opaque handles created and destroyed by this
//! library. Every fallible call returns an [`SclStatus`]; on failure the
//! message is available from [`scl_last_error`] on the same thread.
//! Rationals cross the boundary as decimal strings `"p/q"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scl_core::bounds::lower_bound;
use scl_core::engine::{scl, SclResult, SclStatus as CoreStatus};
use scl_core::hardness::ssp;
use scl_core::words::{parse_word, Word};
use scl_core::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SclStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Parse errors, invalid input, failed preconditions.
    InputError = 3,
    LimitExceeded = 4,
    /// Overflow or a failed internal invariant.
    Internal = 5,
    Panic = 6,
}

/// A parsed word.
pub struct SclWord {
    word: Word,
}

/// An LP value with its status.
pub struct SclValue {
    result: SclResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SclStatus {
    match e.exit_code() {
        2 => SclStatus::InputError,
        3 => SclStatus::LimitExceeded,
        _ => SclStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SclStatus, String)>) -> SclStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SclStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside scl-ffi".into());
            SclStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (SclStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (SclStatus, String) {
    (SclStatus::NullPointer, "null pointer argument".into())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or null. Owned by the
/// library and valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn scl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse `text` into a new word handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scl_word_parse(text: *const c_char, out: *mut *mut SclWord) -> SclStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (SclStatus::InvalidUtf8, "word is not valid UTF-8".to_string()))?;
        let word = parse_word(s).map_err(core_err)?;
        *out = Box::into_raw(Box::new(SclWord { word }));
        Ok(())
    })
}

/// Number of blocks `n` of the word; 0 for null.
///
/// # Safety
/// `word` must be null or a handle from [`scl_word_parse`].
#[no_mangle]
pub unsafe extern "C" fn scl_word_blocks(word: *const SclWord) -> usize {
    word.as_ref().map_or(0, |w| w.word.n())
}

/// # Safety
/// `word` must be null or a handle from [`scl_word_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn scl_word_free(word: *mut SclWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// LP value at disc-vector bound `bound`; with `stabilize` the run at
/// `bound + 1` is reported.
///
/// # Safety
/// `word` must be a live word handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scl_compute(
    word: *const SclWord,
    bound: i64,
    stabilize: bool,
    out: *mut *mut SclValue,
) -> SclStatus {
    guard(|| {
        let w = word.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let result = scl(&w.word, bound, stabilize).map_err(core_err)?;
        *out = Box::into_raw(Box::new(SclValue { result }));
        Ok(())
    })
}

/// The value as a newly allocated `"p/q"` string; release it with
/// [`scl_string_free`]. Null for a null handle.
///
/// # Safety
/// `value` must be null or a live value handle.
#[no_mangle]
pub unsafe extern "C" fn scl_value_string(value: *const SclValue) -> *mut c_char {
    value
        .as_ref()
        .map_or(ptr::null_mut(), |v| into_c_string(v.result.value.to_string()))
}

/// Whether the runs at `B` and `B + 1` agreed.
///
/// # Safety
/// `value` must be null or a live value handle.
#[no_mangle]
pub unsafe extern "C" fn scl_value_is_stabilized(value: *const SclValue) -> bool {
    value
        .as_ref()
        .is_some_and(|v| v.result.status == CoreStatus::Stabilized)
}

/// The bound of the reported LP run; 0 for null.
///
/// # Safety
/// `value` must be null or a live value handle.
#[no_mangle]
pub unsafe extern "C" fn scl_value_bound(value: *const SclValue) -> i64 {
    value.as_ref().map_or(0, |v| v.result.bound_used)
}

/// # Safety
/// `value` must be null or a handle from [`scl_compute`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn scl_value_free(value: *mut SclValue) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

/// The lower bound `max(0, (n/2)(1 − 1/p − 1/q))` as a new `"p/q"` string.
///
/// # Safety
/// `word` must be null or a live word handle.
#[no_mangle]
pub unsafe extern "C" fn scl_lower_bound(word: *const SclWord) -> *mut c_char {
    word.as_ref()
        .map_or(ptr::null_mut(), |w| into_c_string(lower_bound(&w.word).to_string()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn scl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether a proper nonempty subset of the zero-sum list sums to zero.
///
/// # Safety
/// `values` must point to `len` integers and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn scl_subset_sum_proper(values: *const i64, len: usize, out: *mut bool) -> SclStatus {
    guard(|| {
        if (values.is_null() && len > 0) || out.is_null() {
            return Err(null());
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        if slice.iter().map(|&v| v as i128).sum::<i128>() != 0 {
            return Err((SclStatus::InputError, "values must sum to zero".into()));
        }
        *out = ssp(slice).map_err(core_err)?;
        Ok(())
    })
}
