//! C ABI for the autseries workbench.
//!
//! Automata are exposed as opaque [`AsAutomaton`] handles created by
//! `as_automaton_from_text` or `as_solve` and released with
//! `as_automaton_free`. Every fallible call returns an [`AsStatus`]; on
//! failure `as_last_error` describes the problem (valid until the next call
//! on the same thread). Strings returned through `char **` out-parameters
//! are owned by the caller and must be released with `as_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use autseries::algebra::{parse_bipoly, parse_series, BiPoly};
use autseries::christol::{solve, SolveOptions};
use autseries::classify::{classify_hierarchy, ClassifyOptions};
use autseries::dfao::Dfao;
use autseries::inverse::{break_sequence_of, exact_order, Order, BREAK_PRECISION_CAP};
use autseries::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A polynomial, series or automaton text failed to parse.
    Parse = 3,
    /// The equation has no root with the requested prefix, or more than one.
    NoRoot = 4,
    /// An argument violates a documented precondition.
    Precondition = 5,
    /// A search or precision cap was exhausted before an answer was certified.
    CapsExhausted = 6,
    /// Any other computation failure.
    Failed = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Position in the sparseness hierarchy S ⊂ Ŝ ⊂ QS.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsLevel {
    S = 0,
    /// In Ŝ but not sparse.
    HatS = 1,
    /// In QS but not in Ŝ.
    Qs = 2,
    /// Not in QS.
    NotQs = 3,
    /// Some level could not be decided within the bounds.
    Inconclusive = 4,
}

/// Opaque automaton handle.
pub struct AsAutomaton {
    inner: Dfao,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AsStatus {
    match e {
        Error::Parse { .. } => AsStatus::Parse,
        Error::NoSeed => AsStatus::NoRoot,
        Error::Precondition(_) | Error::NotTangentToIdentity | Error::BadModulus(_) | Error::DigitOutOfRange { .. } => {
            AsStatus::Precondition
        }
        Error::CapsExhausted(_) | Error::OrbitCap { .. } => AsStatus::CapsExhausted,
        _ => AsStatus::Failed,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (AsStatus, String)>) -> AsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            AsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside autseries");
            AsStatus::Panic
        }
    }
}

fn fail(e: Error) -> (AsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (AsStatus, String) {
    (AsStatus::NullPointer, format!("`{what}` is null"))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (AsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (AsStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `a` must be null or a live handle.
unsafe fn handle<'a>(a: *const AsAutomaton, what: &str) -> Result<&'a Dfao, (AsStatus, String)> {
    a.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

fn into_handle(a: Dfao) -> *mut AsAutomaton {
    Box::into_raw(Box::new(AsAutomaton { inner: a }))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (AsStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

/// Message describing the last failure on this thread (empty after a
/// success). The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn as_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn as_status_message(status: AsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AsStatus::Ok => c"ok",
        AsStatus::NullPointer => c"null pointer argument",
        AsStatus::InvalidUtf8 => c"invalid UTF-8 argument",
        AsStatus::Parse => c"parse error",
        AsStatus::NoRoot => c"no unique root with the requested prefix",
        AsStatus::Precondition => c"precondition violated",
        AsStatus::CapsExhausted => c"search caps exhausted",
        AsStatus::Failed => c"computation failed",
        AsStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Parses an automaton in the text codec.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_from_text(text: *const c_char, out: *mut *mut AsAutomaton) -> AsStatus {
    guard(|| {
        let t = str_arg(text, "text")?;
        let a = Dfao::from_text(t).map_err(fail)?;
        put(out, into_handle(a), "out")
    })
}

/// Solves `equation = 0` over F₂ for the unique root starting with
/// `prefix` (null: the equation must have exactly one root) and returns
/// its minimal automaton.
///
/// # Safety
/// `equation` must be a NUL-terminated string, `prefix` null or one, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_solve(
    equation: *const c_char,
    prefix: *const c_char,
    out: *mut *mut AsAutomaton,
) -> AsStatus {
    guard(|| {
        let f: BiPoly = parse_bipoly(str_arg(equation, "equation")?, 2).map_err(fail)?;
        let c = if prefix.is_null() {
            None
        } else {
            Some(parse_series(str_arg(prefix, "prefix")?, 2).map_err(fail)?)
        };
        let mut sols = solve(&f, c.as_ref(), &SolveOptions::default()).map_err(fail)?;
        if sols.len() != 1 {
            return Err((AsStatus::NoRoot, format!("{} roots match", sols.len())));
        }
        put(out, into_handle(sols.remove(0).automaton), "out")
    })
}

/// Releases a handle (null is ignored).
///
/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_free(a: *mut AsAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of states.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_num_states(a: *const AsAutomaton, out: *mut usize) -> AsStatus {
    guard(|| put(out, handle(a, "a")?.num_states(), "out"))
}

/// Coefficient of `t^k`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_coeff(a: *const AsAutomaton, k: u64, out: *mut u8) -> AsStatus {
    guard(|| put(out, handle(a, "a")?.coeff_at(k as u128), "out"))
}

/// Minimal automaton of the same series, as a new handle.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_minimize(a: *const AsAutomaton, out: *mut *mut AsAutomaton) -> AsStatus {
    guard(|| {
        let m = handle(a, "a")?.minimize();
        put(out, into_handle(m), "out")
    })
}

/// Whether two automata generate the same series.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_equal_series(
    a: *const AsAutomaton,
    b: *const AsAutomaton,
    out: *mut bool,
) -> AsStatus {
    guard(|| {
        let eq = handle(a, "a")?.equal_series(handle(b, "b")?);
        put(out, eq, "out")
    })
}

/// Text encoding of the automaton; free with `as_string_free`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_automaton_to_text(a: *const AsAutomaton, out: *mut *mut c_char) -> AsStatus {
    guard(|| {
        let text = CString::new(handle(a, "a")?.to_text()).map_err(|e| (AsStatus::Failed, e.to_string()))?;
        put(out, text.into_raw(), "out")
    })
}

/// Releases a string returned by this library (null is ignored).
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn as_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact compositional order: on success `*n` is the exponent with order
/// `2^n`, or `UINT32_MAX` if the order exceeds `2^nmax`; `*certified` is
/// false when only truncated evidence was available.
///
/// # Safety
/// `a` must be a live handle; `n` and `certified` writable.
#[no_mangle]
pub unsafe extern "C" fn as_exact_order(
    a: *const AsAutomaton,
    nmax: u32,
    n: *mut u32,
    certified: *mut bool,
) -> AsStatus {
    guard(|| {
        let rep = exact_order(handle(a, "a")?, nmax).map_err(fail)?;
        let e = match rep.order {
            Order::Finite { n } => n,
            Order::NotFiniteUpTo { .. } => u32::MAX,
        };
        put(n, e, "n")?;
        put(certified, rep.is_certified(), "certified")
    })
}

/// Lower breaks `b_0, …, b_{len−1}` written to `out[0..len]`.
///
/// # Safety
/// `a` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn as_break_sequence(a: *const AsAutomaton, len: usize, out: *mut usize) -> AsStatus {
    guard(|| {
        let b = break_sequence_of(handle(a, "a")?, len, BREAK_PRECISION_CAP).map_err(fail)?;
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(b.as_ptr(), out, b.len());
        Ok(())
    })
}

/// Hierarchy level of the series; `equation` (nullable) is its minimal
/// polynomial, guessed and certified when null.
///
/// # Safety
/// `a` must be a live handle, `equation` null or a NUL-terminated string,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn as_classify(
    a: *const AsAutomaton,
    equation: *const c_char,
    mmax: u64,
    out: *mut AsLevel,
) -> AsStatus {
    guard(|| {
        let f = if equation.is_null() {
            None
        } else {
            Some(parse_bipoly(str_arg(equation, "equation")?, 2).map_err(fail)?)
        };
        let opts = ClassifyOptions {
            mmax,
            ..ClassifyOptions::default()
        };
        let r = classify_hierarchy(handle(a, "a")?, f.as_ref(), opts).map_err(fail)?;
        let level = match r.levels() {
            (true, _, _) => AsLevel::S,
            (false, Some(true), _) => AsLevel::HatS,
            (false, Some(false), Some(true)) => AsLevel::Qs,
            (false, Some(false), Some(false)) => AsLevel::NotQs,
            _ => AsLevel::Inconclusive,
        };
        put(out, level, "out")
    })
}
