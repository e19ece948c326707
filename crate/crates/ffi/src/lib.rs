//! C ABI for `fraclaplace`.
//!
//! Every fallible call returns an [`LtStatus`]; results go through out
//! pointers. Inverse transforms live behind the opaque [`LtGf`] handle,
//! created by [`lt_invert`] and released with [`lt_gf_free`].
//!
//! # Safety
//!
//! Pointers passed in must be null or valid for the access the function
//! documents. Handles must come from [`lt_invert`] and must not be used
//! after [`lt_gf_free`]. Functions never unwind across the boundary.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fraclaplace::{
    eval_regular_part, format_gf, forward_laplace, invert, ml_eval, rgamma, Error, EvalResult,
    GeneralizedFunction, LaplaceExpr, MLParams, Sign,
};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    InvalidExpr = 3,
    Unsupported = 4,
    /// The result was written, but its error bound missed the target.
    NonConvergent = 5,
    DivergentTransform = 6,
    QuadratureFailure = 7,
    StepTooCoarse = 8,
    BufferTooSmall = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

pub const LT_FAMILY_MONOMIAL: i32 = 0;
pub const LT_FAMILY_SHIFTED: i32 = 1;
pub const LT_FAMILY_BINOMIAL: i32 = 2;
pub const LT_SIGN_PLUS: i32 = 1;
pub const LT_SIGN_MINUS: i32 = -1;

/// Value with an estimated absolute error bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LtEval {
    pub value: f64,
    pub abs_err: f64,
}

impl From<EvalResult> for LtEval {
    fn from(r: EvalResult) -> Self {
        LtEval {
            value: r.value,
            abs_err: r.abs_err,
        }
    }
}

/// Opaque handle to an inverse transform.
pub struct LtGf {
    inner: GeneralizedFunction,
}

fn status_of(e: &Error) -> LtStatus {
    match e {
        Error::NonConvergent { .. } => LtStatus::NonConvergent,
        Error::Domain(_) => LtStatus::Domain,
        Error::InvalidExpr(_) => LtStatus::InvalidExpr,
        Error::UnsupportedExpr(_) => LtStatus::Unsupported,
        Error::DivergentTransform { .. } => LtStatus::DivergentTransform,
        Error::QuadratureFailure { .. } => LtStatus::QuadratureFailure,
        Error::StepTooCoarse { .. } => LtStatus::StepTooCoarse,
    }
}

fn guard(f: impl FnOnce() -> LtStatus) -> LtStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LtStatus::Panic)
}

/// Writes an evaluation outcome. Non-convergent results still carry the
/// best value and its bound.
unsafe fn write_eval(out: *mut LtEval, r: fraclaplace::Result<EvalResult>) -> LtStatus {
    match r {
        Ok(v) => {
            *out = v.into();
            LtStatus::Ok
        }
        Err(Error::NonConvergent { value, abs_err }) => {
            *out = LtEval { value, abs_err };
            LtStatus::NonConvergent
        }
        Err(e) => status_of(&e),
    }
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn lt_status_message(status: LtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        LtStatus::Ok => c"ok",
        LtStatus::NullPointer => c"null pointer argument",
        LtStatus::Domain => c"argument outside the domain",
        LtStatus::InvalidExpr => c"invalid expression parameters",
        LtStatus::Unsupported => c"unsupported expression",
        LtStatus::NonConvergent => c"accuracy target not certified",
        LtStatus::DivergentTransform => c"s is not above the abscissa of convergence",
        LtStatus::QuadratureFailure => c"quadrature missed its error target",
        LtStatus::StepTooCoarse => c"step too coarse",
        LtStatus::BufferTooSmall => c"buffer too small",
        LtStatus::IndexOutOfRange => c"index out of range",
        LtStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// `1/Γ(x)`; exactly zero at non-positive integers.
#[no_mangle]
pub extern "C" fn lt_rgamma(x: f64) -> f64 {
    catch_unwind(|| rgamma(x)).unwrap_or(f64::NAN)
}

/// `E_{α,β}(z)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_ml_eval(alpha: f64, beta: f64, z: f64, out: *mut LtEval) -> LtStatus {
    if out.is_null() {
        return LtStatus::NullPointer;
    }
    guard(|| write_eval(out, ml_eval(MLParams::new(alpha, beta, z))))
}

/// Inverts `mu · s^q / D(s)`; `family` is one of the `LT_FAMILY_*`
/// constants and `sign` one of `LT_SIGN_*` (the sign of λ in the time
/// domain). `alpha`, `sign` and `lambda` are ignored for the monomial.
///
/// # Safety
/// `out` must be null or valid for writes. On success `*out` owns a handle
/// that must be released with [`lt_gf_free`].
#[no_mangle]
pub unsafe extern "C" fn lt_invert(
    mu: f64,
    q: f64,
    family: i32,
    alpha: f64,
    sign: i32,
    lambda: f64,
    out: *mut *mut LtGf,
) -> LtStatus {
    if out.is_null() {
        return LtStatus::NullPointer;
    }
    guard(|| {
        let sign = match sign {
            LT_SIGN_PLUS => Sign::Plus,
            LT_SIGN_MINUS => Sign::Minus,
            _ => return LtStatus::InvalidExpr,
        };
        let expr = match family {
            LT_FAMILY_MONOMIAL => LaplaceExpr::monomial(q),
            LT_FAMILY_SHIFTED => LaplaceExpr::shifted(q, alpha, sign, lambda),
            LT_FAMILY_BINOMIAL => LaplaceExpr::binomial(q, alpha, sign, lambda),
            _ => return LtStatus::InvalidExpr,
        };
        match expr.and_then(|e| invert(&e.with_mu(mu))) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LtGf { inner }));
                LtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a handle. Null is accepted.
///
/// # Safety
/// `gf` must be null or a handle from [`lt_invert`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_free(gf: *mut LtGf) {
    if !gf.is_null() {
        drop(Box::from_raw(gf));
    }
}

/// Number of delta-derivative terms.
///
/// # Safety
/// `gf` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_singular_count(gf: *const LtGf, out: *mut usize) -> LtStatus {
    if gf.is_null() || out.is_null() {
        return LtStatus::NullPointer;
    }
    *out = (&*gf).inner.singular.len();
    LtStatus::Ok
}

/// Number of regular terms.
///
/// # Safety
/// `gf` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_regular_count(gf: *const LtGf, out: *mut usize) -> LtStatus {
    if gf.is_null() || out.is_null() {
        return LtStatus::NullPointer;
    }
    *out = (&*gf).inner.regular.len();
    LtStatus::Ok
}

/// Coefficient and order of the `index`-th delta-derivative term
/// (descending order).
///
/// # Safety
/// `gf` must be a live handle or null; out pointers null or valid.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_singular_term(
    gf: *const LtGf,
    index: usize,
    coeff: *mut f64,
    order: *mut f64,
) -> LtStatus {
    if gf.is_null() || coeff.is_null() || order.is_null() {
        return LtStatus::NullPointer;
    }
    match (&*gf).inner.singular.get(index) {
        Some(s) => {
            *coeff = s.coeff;
            *order = s.order;
            LtStatus::Ok
        }
        None => LtStatus::IndexOutOfRange,
    }
}

/// Regular part at `t > 0` (delta derivatives excluded).
///
/// # Safety
/// `gf` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_eval_regular(gf: *const LtGf, t: f64, out: *mut LtEval) -> LtStatus {
    if gf.is_null() || out.is_null() {
        return LtStatus::NullPointer;
    }
    guard(|| write_eval(out, eval_regular_part(&(&*gf).inner, t)))
}

/// Regular part plus the pointwise form of every delta derivative at `t > 0`.
///
/// # Safety
/// `gf` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_eval_pointwise(gf: *const LtGf, t: f64, out: *mut LtEval) -> LtStatus {
    if gf.is_null() || out.is_null() {
        return LtStatus::NullPointer;
    }
    guard(|| write_eval(out, (&*gf).inner.eval_pointwise(t)))
}

/// Forward Laplace transform at real `s`.
///
/// # Safety
/// `gf` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lt_forward_laplace(gf: *const LtGf, s: f64, out: *mut LtEval) -> LtStatus {
    if gf.is_null() || out.is_null() {
        return LtStatus::NullPointer;
    }
    guard(|| write_eval(out, forward_laplace(&(&*gf).inner, s)))
}

/// Renders the handle as UTF-8 text. `*needed` receives the byte length
/// without the terminator; the text is written only when `cap > *needed`.
/// Pass `buf = NULL, cap = 0` to query the size.
///
/// # Safety
/// `gf` must be a live handle or null; `needed` null or valid for writes;
/// `buf` valid for `cap` bytes when `cap > 0`.
#[no_mangle]
pub unsafe extern "C" fn lt_gf_format(gf: *const LtGf, buf: *mut c_char, cap: usize, needed: *mut usize) -> LtStatus {
    if gf.is_null() || needed.is_null() || (buf.is_null() && cap > 0) {
        return LtStatus::NullPointer;
    }
    guard(|| {
        let text = format_gf(&(&*gf).inner);
        *needed = text.len();
        if cap <= text.len() {
            return LtStatus::BufferTooSmall;
        }
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        LtStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_messages_are_nul_terminated() {
        let msg = unsafe { CStr::from_ptr(lt_status_message(LtStatus::BufferTooSmall)) };
        assert_eq!(msg.to_str().unwrap(), "buffer too small");
    }

    #[test]
    fn bad_enum_values_are_rejected() {
        let mut h = std::ptr::null_mut();
        let st = unsafe { lt_invert(1.0, 0.5, 7, 1.0, LT_SIGN_MINUS, 1.0, &mut h) };
        assert_eq!(st, LtStatus::InvalidExpr);
        let st = unsafe { lt_invert(1.0, 0.5, LT_FAMILY_BINOMIAL, 1.0, 0, 1.0, &mut h) };
        assert_eq!(st, LtStatus::InvalidExpr);
        assert!(h.is_null());
    }
}
