//! C ABI over the `ulambda` toolkit.
//!
//! Every fallible function returns a [`UlStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`ul_last_error_message`]. Handles are opaque and owned by the caller,
//! who releases them with the matching `_free` function.
//!
//! # Safety
//!
//! Shared by every exported function: each pointer argument is null or valid
//! for the access its type implies, handles come from this library and are
//! not yet freed, buffers hold at least the stated length, and strings are
//! NUL-terminated. Null is reported as `NullPointer` rather than dereferenced.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use ulambda::bounds::{
    b_a, cauchy_schwarz_bound, conjecture_bound, f_root_in_unit_interval, fixed_point_zero, r_star, v_of_x,
};
use ulambda::uclass::{dilate, q_from_omega, q_from_phi, sup_u, taylor_of_f};
use ulambda::{DiskFunction, DiskSpec, Error, GridSpec, UCandidate, Verdict};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    /// A parameter outside the documented domain.
    InvalidArgument = 4,
    /// A numerical routine could not produce a trustworthy value.
    NumericalFailure = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UlComplex {
    pub re: f64,
    pub im: f64,
}

impl From<UlComplex> for Complex64 {
    fn from(c: UlComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for UlComplex {
    fn from(c: Complex64) -> Self {
        UlComplex { re: c.re, im: c.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlVerdict {
    Inside = 0,
    Outside = 1,
    Inconclusive = 2,
}

/// Summary of a membership sweep over the default grid.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UlMembership {
    pub verdict: UlVerdict,
    pub sup_estimate: f64,
    pub argmax: UlComplex,
    /// `lambda - sup_estimate`.
    pub margin: f64,
    /// Zeros of `z/f` inside the outermost grid circle.
    pub q_zero_count: i32,
    pub min_abs_q: f64,
}

/// Opaque analytic self-map of the closed unit disk.
pub struct UlDisk(DiskFunction);

/// Opaque candidate `f`, stored through `q = z/f`.
pub struct UlCandidate(UCandidate);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> UlStatus {
    match e {
        Error::InvalidParameter(_)
        | Error::OutOfRange { .. }
        | Error::OutsideDisk(_)
        | Error::BasePointOutsideClosedDisk(_)
        | Error::ZeroOnOrOutsideBoundary(_)
        | Error::BasePointNotZero(_)
        | Error::NotBoundaryMax(_)
        | Error::NonRealQuotient(_)
        | Error::HypothesisViolated(_)
        | Error::ExcludedRotation
        | Error::NotContractive { .. } => UlStatus::InvalidArgument,
        _ => UlStatus::NumericalFailure,
    }
}

/// Runs `body`, turning errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), (UlStatus, String)>>(body: F) -> UlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            UlStatus::Panic
        }
    }
}

fn lift<T>(r: ulambda::Result<T>) -> Result<T, (UlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (UlStatus, String) {
    (UlStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> (UlStatus, String) {
    (UlStatus::InvalidArgument, msg.into())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (UlStatus, String)> {
    // SAFETY: the caller passes a live handle or null
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Result<(), (UlStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and, by contract, valid for writes
    unsafe { p.write(value) };
    Ok(())
}

/// Hands a new handle to the caller; checks `out` first so nothing leaks.
unsafe fn emit<T>(value: T, out: *mut *mut T) -> Result<(), (UlStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: non-null and, by contract, valid for writes
    unsafe { out.write(Box::into_raw(Box::new(value))) };
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<(), (UlStatus, String)> {
    if lambda > 0.0 && lambda <= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("lambda = {lambda} is outside (0, 1]")))
    }
}

/// Copies the last error of this thread into `buf` as a NUL-terminated
/// string, truncating to `len - 1` bytes. Returns the full message length
/// without the terminator; pass a null `buf` to query it.
#[no_mangle]
pub unsafe extern "C" fn ul_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: caller guarantees `buf` holds `len` bytes
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ul_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a disk function from its JSON form, e.g.
/// `{"kind":"moebius","a":[0.3,0.1],"psi":0.5}`.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_from_json(json: *const c_char, out: *mut *mut UlDisk) -> UlStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        // SAFETY: non-null and NUL-terminated by contract
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| (UlStatus::InvalidUtf8, e.to_string()))?;
        let spec: DiskSpec = serde_json::from_str(text).map_err(|e| (UlStatus::InvalidJson, e.to_string()))?;
        let disk = lift(DiskFunction::from_spec(&spec))?;
        unsafe { emit(UlDisk(disk), out) }
    })
}

/// `(a + e^{i psi} z) / (1 + conj(a) e^{i psi} z)` for `|a| <= 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_moebius(a: UlComplex, psi: f64, out: *mut *mut UlDisk) -> UlStatus {
    guard(|| {
        let disk = lift(DiskFunction::moebius_shift(a.into(), psi))?;
        unsafe { emit(UlDisk(disk), out) }
    })
}

/// `e^{i theta} z^k`.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_monomial(theta: f64, k: u32, out: *mut *mut UlDisk) -> UlStatus {
    guard(|| {
        let disk = lift(DiskFunction::monomial(theta, k))?;
        unsafe { emit(UlDisk(disk), out) }
    })
}

/// Value at `|z| <= 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_eval(disk: *const UlDisk, z: UlComplex, out: *mut UlComplex) -> UlStatus {
    guard(|| {
        let disk = unsafe { deref(disk, "disk") }?;
        let w = lift(disk.0.eval(z.into()))?;
        unsafe { write(out, w.into(), "out") }
    })
}

/// `int_0^z` of the disk function, for `|z| <= 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_antiderivative(disk: *const UlDisk, z: UlComplex, out: *mut UlComplex) -> UlStatus {
    guard(|| {
        let disk = unsafe { deref(disk, "disk") }?;
        let w = lift(disk.0.antiderivative(z.into()))?;
        unsafe { write(out, w.into(), "out") }
    })
}

/// Releases a disk handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ul_disk_free(disk: *mut UlDisk) {
    if !disk.is_null() {
        // SAFETY: produced by Box::into_raw in this crate and not freed before
        drop(unsafe { Box::from_raw(disk) });
    }
}

fn emit_candidate(cand: UCandidate, out: *mut *mut UlCandidate) -> Result<(), (UlStatus, String)> {
    unsafe { emit(UlCandidate(cand), out) }
}

/// `z / ((1 + e^{i theta} z)(1 + lambda e^{i theta} z))` to `order` coefficients.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_extremal(
    lambda: f64,
    theta: f64,
    order: usize,
    out: *mut *mut UlCandidate,
) -> UlStatus {
    guard(|| {
        check_lambda(lambda)?;
        emit_candidate(lift(UCandidate::extremal(lambda, theta, order))?, out)
    })
}

/// `z/f = 1 - (1 + lambda) phi + lambda phi^2`; `phi` must fix the origin.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_from_phi(
    lambda: f64,
    phi: *const UlDisk,
    order: usize,
    out: *mut *mut UlCandidate,
) -> UlStatus {
    guard(|| {
        check_lambda(lambda)?;
        let phi = unsafe { deref(phi, "phi") }?;
        emit_candidate(lift(q_from_phi(lambda, &phi.0, order))?, out)
    })
}

/// `z/f = 1 - a_2 z + lambda z int_0^z omega`.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_from_omega(
    a2: UlComplex,
    lambda: f64,
    omega: *const UlDisk,
    order: usize,
    out: *mut *mut UlCandidate,
) -> UlStatus {
    guard(|| {
        check_lambda(lambda)?;
        let omega = unsafe { deref(omega, "omega") }?;
        emit_candidate(lift(q_from_omega(a2.into(), lambda, &omega.0, order))?, out)
    })
}

/// `f_r(z) = f(r z) / r` for `0 < r < 1`, as a new handle.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_dilate(
    cand: *const UlCandidate,
    r: f64,
    out: *mut *mut UlCandidate,
) -> UlStatus {
    guard(|| {
        let cand = unsafe { deref(cand, "candidate") }?;
        emit_candidate(lift(dilate(&cand.0, r))?, out)
    })
}

/// Number of known Taylor coefficients minus one.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_order(cand: *const UlCandidate, out: *mut usize) -> UlStatus {
    guard(|| {
        let cand = unsafe { deref(cand, "candidate") }?;
        unsafe { write(out, cand.0.order(), "out") }
    })
}

/// Taylor coefficients `a_0 = 0, a_1 = 1, a_2, ...` of `f`.
///
/// `*written` receives the number of coefficients, `order + 1`. If `len` is
/// smaller, nothing is copied and `BufferTooSmall` is returned.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_coefficients(
    cand: *const UlCandidate,
    buf: *mut UlComplex,
    len: usize,
    written: *mut usize,
) -> UlStatus {
    guard(|| {
        let cand = unsafe { deref(cand, "candidate") }?;
        let f = lift(taylor_of_f(&cand.0))?;
        let coeffs = f.coeffs();
        unsafe { write(written, coeffs.len(), "written") }?;
        if len < coeffs.len() {
            return Err((UlStatus::BufferTooSmall, format!("need {} coefficients, got {len}", coeffs.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for (k, c) in coeffs.iter().enumerate() {
            // SAFETY: `buf` holds at least `len >= coeffs.len()` elements
            unsafe { buf.add(k).write((*c).into()) };
        }
        Ok(())
    })
}

/// Sweeps `|U_f|` over the default polar grid (radii 0.1..0.9, 0.99, 0.999;
/// 720 angles) and reports the verdict at tolerance 1e-6.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_membership(cand: *const UlCandidate, out: *mut UlMembership) -> UlStatus {
    guard(|| {
        let cand = unsafe { deref(cand, "candidate") }?;
        let rep = lift(sup_u(&cand.0, &GridSpec::default()))?;
        let verdict = match rep.verdict {
            Verdict::Inside => UlVerdict::Inside,
            Verdict::Outside => UlVerdict::Outside,
            Verdict::Inconclusive => UlVerdict::Inconclusive,
        };
        let summary = UlMembership {
            verdict,
            sup_estimate: rep.sup_estimate,
            argmax: rep.argmax.into(),
            margin: rep.margin,
            q_zero_count: rep.q_zero_count,
            min_abs_q: rep.min_abs_q,
        };
        unsafe { write(out, summary, "out") }
    })
}

/// Releases a candidate handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ul_candidate_free(cand: *mut UlCandidate) {
    if !cand.is_null() {
        // SAFETY: produced by Box::into_raw in this crate and not freed before
        drop(unsafe { Box::from_raw(cand) });
    }
}

/// Domain shared by the coefficient bounds: `n >= 2`, `0 <= lambda <= 1`.
fn check_bound_args(n: usize, lambda: f64) -> Result<(), (UlStatus, String)> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(invalid(format!("lambda = {lambda} is outside [0, 1]")));
    }
    Ok(())
}

/// Conjectured sharp bound on `|a_n|`.
#[no_mangle]
pub unsafe extern "C" fn ul_conjecture_bound(n: usize, lambda: f64, out: *mut f64) -> UlStatus {
    guard(|| {
        check_bound_args(n, lambda)?;
        unsafe { write(out, conjecture_bound(n, lambda), "out") }
    })
}

/// Proven Cauchy-Schwarz bound on `|a_n|`.
#[no_mangle]
pub unsafe extern "C" fn ul_cauchy_schwarz_bound(n: usize, lambda: f64, out: *mut f64) -> UlStatus {
    guard(|| {
        check_bound_args(n, lambda)?;
        unsafe { write(out, cauchy_schwarz_bound(n, lambda), "out") }
    })
}

/// `v(x) = int_0^1 (x + t)/(1 + x t) dt` for `0 <= x <= 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_v_of_x(x: f64, out: *mut f64) -> UlStatus {
    guard(|| {
        if !(0.0..=1.0).contains(&x) {
            return Err(invalid(format!("x = {x} is outside [0, 1]")));
        }
        unsafe { write(out, v_of_x(x), "out") }
    })
}

/// `B_a(z) = (1/z) int_0^z (a + t)/(1 + conj(a) t) dt` for `|a|, |z| <= 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_b_a(a: UlComplex, z: UlComplex, out: *mut UlComplex) -> UlStatus {
    guard(|| {
        let w = lift(b_a(a.into(), z.into()))?;
        unsafe { write(out, w.into(), "out") }
    })
}

/// Root in (0, 1) of `lambda R^2 r^2 - r (R (1 + lambda) + 1 - lambda) + lambda`.
/// `*has_root` is set to 0 when there is none, and `*root` is then untouched.
#[no_mangle]
pub unsafe extern "C" fn ul_f_root(lambda: f64, big_r: f64, has_root: *mut i32, root: *mut f64) -> UlStatus {
    guard(|| {
        match lift(f_root_in_unit_interval(lambda, big_r))? {
            Some(r) => {
                unsafe { write(root, r, "root") }?;
                unsafe { write(has_root, 1, "has_root") }
            }
            None => unsafe { write(has_root, 0, "has_root") },
        }
    })
}

/// Dilation threshold for `1/2 < lambda < 1`.
#[no_mangle]
pub unsafe extern "C" fn ul_r_star(lambda: f64, out: *mut f64) -> UlStatus {
    guard(|| unsafe { write(out, lift(r_star(lambda))?, "out") })
}

/// Zero of `1 - a_2 z + lambda z int_0^z omega` in `|z| <= r` by contraction.
/// `iterations` may be null.
#[no_mangle]
pub unsafe extern "C" fn ul_fixed_point_zero(
    a2: UlComplex,
    lambda: f64,
    omega: *const UlDisk,
    r: f64,
    z0: *mut UlComplex,
    iterations: *mut usize,
) -> UlStatus {
    guard(|| {
        check_lambda(lambda)?;
        let omega = unsafe { deref(omega, "omega") }?;
        let w = lift(fixed_point_zero(a2.into(), lambda, &omega.0, r))?;
        unsafe { write(z0, w.z0.into(), "z0") }?;
        if !iterations.is_null() {
            unsafe { write(iterations, w.iterations, "iterations") }?;
        }
        Ok(())
    })
}
