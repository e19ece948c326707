//! Forward Laplace transform of a [`GeneralizedFunction`] at real `s`.
//!
//! Delta derivatives transform exactly to `s^μ`. Regular terms are
//! integrated numerically, which is what makes the round trip an
//! independent check of the inversion formulas.

use crate::gf::{GeneralizedFunction, RegularTerm};
use crate::quadrature::integrate;
use crate::special::EvalResult;
use crate::{Error, Result};

const REL_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 4000;
/// Decay lengths `1/(s-σ)` covered before the tail is cut.
const TAIL_LENGTHS: f64 = 45.0;

/// `∫_0^∞ term(t) e^{-st} dt` for one regular term.
fn transform_term(term: &RegularTerm, s: f64) -> Result<EvalResult> {
    let sigma = term.abscissa();
    if s <= sigma {
        return Err(Error::DivergentTransform { s, abscissa: sigma });
    }
    let e0 = term.leading_exponent();
    if e0 <= -1.0 {
        return Err(Error::UnsupportedExpr(format!(
            "a regular term behaving like t^{e0} at the origin has no Laplace integral"
        )));
    }
    let decay = 1.0 / (s - sigma);
    let t1 = decay.min(1.0);
    let eval = |t: f64| -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        term.eval(t).map(|r| r.value * (-s * t).exp()).unwrap_or(f64::NAN)
    };

    // [0, t1] with t = t1·u^m, which turns t^{e0} into a bounded integrand.
    let m = if e0.fract() != 0.0 || e0 < 0.0 { 1.0 / (e0 + 1.0) } else { 1.0 };
    let head = integrate(
        |u: f64| {
            let t = t1 * u.powf(m);
            let jac = t1 * m * u.powf(m - 1.0);
            if t == 0.0 || jac == 0.0 {
                0.0
            } else {
                eval(t) * jac
            }
        },
        0.0,
        1.0,
        1e-300,
        REL_TOL,
        MAX_PANELS,
    )?;

    // [t1, T] in a few geometric pieces, then a bound on what is left.
    let big_t = t1 + TAIL_LENGTHS * decay;
    let mut acc = head;
    let mut a = t1;
    while a < big_t {
        let b = (a + 8.0 * decay.max(t1)).min(big_t);
        let piece = integrate(eval, a, b, 1e-300, REL_TOL, MAX_PANELS)?;
        acc = acc + piece;
        a = b;
    }
    let tail = 2.0 * eval(big_t).abs() * decay;
    if !tail.is_finite() {
        return Err(Error::QuadratureFailure { value: acc.value, abs_err: f64::INFINITY });
    }
    Ok(EvalResult::new(acc.value, acc.abs_err + tail))
}

/// `Σ c·s^μ` over the singular terms plus the numerically integrated
/// transform of every regular term.
pub fn forward_laplace(f: &GeneralizedFunction, s: f64) -> Result<EvalResult> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("forward Laplace transform needs real s > 0, got {s}")));
    }
    let mut acc = EvalResult::exact(0.0);
    for term in &f.singular {
        let v = term.coeff * s.powf(term.order);
        acc = acc + EvalResult::new(v, 2.0 * f64::EPSILON * v.abs());
    }
    for term in &f.regular {
        acc = acc + transform_term(term, s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Sign, SingularTerm};

    #[test]
    fn delta_derivative_transforms_to_s() {
        let f = GeneralizedFunction::new(vec![SingularTerm::new(1.0, 1.0)], vec![]);
        assert_eq!(forward_laplace(&f, 3.0).unwrap().value, 3.0);
    }

    #[test]
    fn exponential() {
        let f = GeneralizedFunction::new(
            vec![],
            vec![RegularTerm::ExpPower {
                coeff: 1.0,
                p: 0.0,
                sign: Sign::Minus,
                lambda: 1.0,
            }],
        );
        let r = forward_laplace(&f, 2.0).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn singular_power_at_origin() {
        // L{t^{-1/2}} = sqrt(pi/s)
        let f = GeneralizedFunction::new(vec![], vec![RegularTerm::Power { coeff: 1.0, p: -0.5 }]);
        let r = forward_laplace(&f, 2.0).unwrap();
        assert!((r.value - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn growing_term_needs_s_above_abscissa() {
        let f = GeneralizedFunction::new(
            vec![],
            vec![RegularTerm::ExpPower {
                coeff: 1.0,
                p: 0.0,
                sign: Sign::Plus,
                lambda: 2.0,
            }],
        );
        assert!(matches!(forward_laplace(&f, 1.5), Err(Error::DivergentTransform { .. })));
        let r = forward_laplace(&f, 3.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
