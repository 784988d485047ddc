//! C ABI over `towercalc`.
//!
//! Every call returns a [`TcStatus`]; results come back through out-pointers.
//! On failure the message is kept per thread and read with
//! [`tc_last_error_message`]. Complexes are opaque [`TcComplex`] handles
//! released with [`tc_complex_free`]; strings returned by the library are
//! released with [`tc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use towercalc::k_euler_reports::{euler_char, layer_euler};
use towercalc::lie_words::witt_count;
use towercalc::partition_homology::{order_complex_betti, Coefficients};
use towercalc::stable_complex::parse_complex;
use towercalc::{CalcError, OddPrime, StableComplex};

/// Status codes. `TC_STATUS_OK` is zero; the others mirror the library's
/// error kinds plus the ABI-level failures.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidPrime = 3,
    PrimeMismatch = 4,
    Schema = 5,
    Precondition = 6,
    NotPrime = 7,
    BoundExceeded = 8,
    NonTorsion = 9,
    NotADifferential = 10,
    Panic = 11,
}

/// Opaque handle to a formal wedge of spheres and Moore spectra.
pub struct TcComplex(StableComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

struct Failure(TcStatus, String);

impl From<CalcError> for Failure {
    fn from(e: CalcError) -> Self {
        let status = match e {
            CalcError::InvalidPrime(_) => TcStatus::InvalidPrime,
            CalcError::PrimeMismatch { .. } => TcStatus::PrimeMismatch,
            CalcError::Schema(_) => TcStatus::Schema,
            CalcError::Precondition(_) => TcStatus::Precondition,
            CalcError::NotPrime(_) => TcStatus::NotPrime,
            CalcError::BoundExceeded { .. } => TcStatus::BoundExceeded,
            CalcError::NonTorsion(_) => TcStatus::NonTorsion,
            CalcError::NotADifferential => TcStatus::NotADifferential,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            TcStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TcStatus::Panic
        }
    }
}

unsafe fn handle<'a>(p: *const TcComplex, what: &str) -> Result<&'a StableComplex, Failure> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit(out: *mut *mut TcComplex, c: StableComplex) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(TcComplex(c))));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(TcStatus::InvalidUtf8, "output contains a nul byte".into()))?;
    out.write(c.into_raw());
    Ok(())
}

unsafe fn input_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(TcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn same_prime(a: &StableComplex, b: &StableComplex) -> Result<(), Failure> {
    if a.prime() != b.prime() {
        return Err(CalcError::PrimeMismatch {
            expected: a.prime().get(),
            found: b.prime().get(),
        }
        .into());
    }
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_zero(prime: u32, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| emit(out, StableComplex::zero(OddPrime::new(prime)?)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_sphere(prime: u32, dim: i64, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| emit(out, StableComplex::sphere(OddPrime::new(prime)?, dim)))
}

/// `M^dim = S^dim / p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_moore(prime: u32, dim: i64, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| emit(out, StableComplex::moore(OddPrime::new(prime)?, dim)))
}

/// Parses the JSON wire form and checks it against `prime`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_from_json(prime: u32, json: *const c_char, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| {
        let text = input_str(json, "json")?;
        emit(out, parse_complex(text, OddPrime::new(prime)?)?)
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable. Free the result with
/// [`tc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tc_complex_to_json(c: *const TcComplex, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let c = handle(c, "complex")?;
        emit_string(out, serde_json::to_string(c).expect("complexes serialize"))
    })
}

/// Human-readable form such as `S^3 ∨ 2·M^9`.
///
/// # Safety
/// As for [`tc_complex_to_json`].
#[no_mangle]
pub unsafe extern "C" fn tc_complex_to_string(c: *const TcComplex, out: *mut *mut c_char) -> TcStatus {
    guard(|| emit_string(out, handle(c, "complex")?.to_string()))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_wedge(a: *const TcComplex, b: *const TcComplex, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        same_prime(a, b)?;
        emit(out, a.wedge(b))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_smash(a: *const TcComplex, b: *const TcComplex, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        same_prime(a, b)?;
        emit(out, a.smash(b))
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_suspend(c: *const TcComplex, shift: i64, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| emit(out, handle(c, "complex")?.suspend(shift)))
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_smash_power(c: *const TcComplex, k: u32, out: *mut *mut TcComplex) -> TcStatus {
    guard(|| emit(out, handle(c, "complex")?.smash_power(k)))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_equal(a: *const TcComplex, b: *const TcComplex, out: *mut bool) -> TcStatus {
    guard(|| write_out(out, handle(a, "a")? == handle(b, "b")?))
}

/// `χ` of a wedge of Moore spectra; fails with `TC_STATUS_NON_TORSION` if a
/// sphere is present.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_euler(c: *const TcComplex, out: *mut i64) -> TcStatus {
    guard(|| write_out(out, euler_char(handle(c, "complex")?)?))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_complex_free(c: *mut TcComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of the free Lie algebra in the given multidegree.
///
/// # Safety
/// `degree` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_witt_count(degree: *const u32, len: usize, out: *mut u64) -> TcStatus {
    guard(|| {
        if degree.is_null() && len > 0 {
            return Err(null("degree"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(degree, len) };
        write_out(out, witt_count(slice)?)
    })
}

/// K-theoretic Euler characteristic of the n-th layer of `M^ell`, for prime
/// `n > 2p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_layer_euler(ell: i64, n: u32, prime: u32, out: *mut i64) -> TcStatus {
    guard(|| write_out(out, layer_euler(ell, n, OddPrime::new(prime)?)?))
}

/// Reduced Betti numbers of the partition complex as a JSON object mapping
/// degree to rank. `field` is `"Q"` or `"F<q>"`.
///
/// # Safety
/// `field` must be a nul-terminated string; `out` must be writable. Free the
/// result with [`tc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tc_partition_betti_json(n: u32, field: *const c_char, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let field: Coefficients = input_str(field, "field")?.parse()?;
        let table = order_complex_betti(n, field)?;
        emit_string(out, serde_json::to_string(&table.betti).expect("maps serialize"))
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
