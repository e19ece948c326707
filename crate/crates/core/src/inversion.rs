//! Symbolic inverse Laplace transforms of `μ s^q`, `μ s^q/(s∓λ)^α` and
//! `μ s^q/(s^α∓λ)`.
//!
//! For the last family the recurrence `E_{α,β}(z) = 1/Γ(β) + z E_{α,α+β}(z)`
//! is applied until the second Mittag-Leffler parameter is positive; every
//! step peels off one fractional derivative of the delta function.

use serde::{Deserialize, Serialize};

use crate::gf::{ml_abscissa, simplify, GeneralizedFunction, RegularTerm, Sign, SingularTerm};
use crate::special::rgamma;
use crate::{Error, Result};

/// Parameters this close to a multiple of `α` (or to an integer offset)
/// are treated as exactly on it.
pub const MULTIPLE_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `s^q`
    PureMonomial,
    /// `s^q / (s ∓ λ)^α`
    ShiftedPower,
    /// `s^q / (s^α ∓ λ)`
    BinomialAlpha,
}

/// `μ · s^q / D(s)` with the denominator chosen by `family`.
///
/// `sign` is the sign λ carries in the time domain: `Sign::Minus` means the
/// denominator is `s + λ` (or `s^α + λ`) and the inverse decays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceExpr {
    pub mu: f64,
    pub q: f64,
    pub family: Family,
    pub alpha: f64,
    pub sign: Sign,
    pub lambda: f64,
}

impl LaplaceExpr {
    pub fn monomial(q: f64) -> Result<Self> {
        let e = LaplaceExpr {
            mu: 1.0,
            q,
            family: Family::PureMonomial,
            alpha: 1.0,
            sign: Sign::Minus,
            lambda: 0.0,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn shifted(q: f64, alpha: f64, sign: Sign, lambda: f64) -> Result<Self> {
        let e = LaplaceExpr {
            mu: 1.0,
            q,
            family: Family::ShiftedPower,
            alpha,
            sign,
            lambda,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn binomial(q: f64, alpha: f64, sign: Sign, lambda: f64) -> Result<Self> {
        let e = LaplaceExpr {
            mu: 1.0,
            q,
            family: Family::BinomialAlpha,
            alpha,
            sign,
            lambda,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::InvalidExpr(format!("mu must be finite, got {}", self.mu)));
        }
        if !(self.q >= 0.0) || !self.q.is_finite() {
            return Err(Error::InvalidExpr(format!("q must be finite and >= 0, got {}", self.q)));
        }
        if self.family == Family::PureMonomial {
            return Ok(());
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidExpr(format!("alpha must be finite and > 0, got {}", self.alpha)));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidExpr(format!(
                "lambda must be finite and >= 0 (the sign is a separate flag), got {}",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Abscissa of convergence of the inverse transform's Laplace integral.
    pub fn abscissa(&self) -> f64 {
        match self.family {
            Family::PureMonomial => 0.0,
            Family::ShiftedPower => match self.sign {
                Sign::Plus => self.lambda,
                Sign::Minus => 0.0,
            },
            Family::BinomialAlpha => ml_abscissa(self.alpha, self.sign, self.lambda),
        }
    }

    /// The transform itself at real `s`.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("expressions are evaluated for real s > 0, got {s}")));
        }
        let num = self.mu * s.powf(self.q);
        let shift = -self.sign.apply(self.lambda);
        let den = match self.family {
            Family::PureMonomial => 1.0,
            Family::ShiftedPower => {
                let base = s + shift;
                if base <= 0.0 {
                    return Err(Error::DivergentTransform { s, abscissa: self.abscissa() });
                }
                base.powf(self.alpha)
            }
            Family::BinomialAlpha => s.powf(self.alpha) + shift,
        };
        Ok(num / den)
    }
}

/// Side information about how an inversion was carried out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    /// Number of delta-derivative terms peeled off the regular part.
    pub extracted: u32,
    /// `q` sat on a multiple `jα` (or on `α` plus an integer for the
    /// shifted family), so the last extracted term is `δ(t)` itself.
    pub exact_multiple: bool,
    /// `λ = 0` collapsed the expression to a single power of `s`.
    pub reduced_to_monomial: bool,
}

/// `x` rounded to an integer if it lies within [`MULTIPLE_SNAP`] of one.
fn snap_integer(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() < MULTIPLE_SNAP).then_some(r)
}

/// `L^{-1}{μ s^{r}}` for real `r`.
fn power_of_s(mu: f64, r: f64, report: &mut InversionReport) -> GeneralizedFunction {
    report.reduced_to_monomial = true;
    if r >= -MULTIPLE_SNAP {
        let order = match snap_integer(r) {
            Some(n) => n.max(0.0),
            None => r,
        };
        GeneralizedFunction::new(vec![SingularTerm::new(mu, order)], vec![])
    } else {
        GeneralizedFunction::new(
            vec![],
            vec![RegularTerm::Power {
                coeff: mu * rgamma(-r),
                p: -r - 1.0,
            }],
        )
    }
}

fn invert_binomial(e: &LaplaceExpr, report: &mut InversionReport) -> GeneralizedFunction {
    let (q, alpha, lambda) = (e.q, e.alpha, e.lambda);
    if lambda == 0.0 {
        return power_of_s(e.mu, q - alpha, report);
    }
    let ratio = q / alpha;
    let (n, exact) = match snap_integer(ratio) {
        Some(r) if (q - r * alpha).abs() < MULTIPLE_SNAP && r >= 1.0 => (r as u32, true),
        _ => (ratio.floor() as u32, false),
    };
    report.extracted = n;
    report.exact_multiple = exact;
    let singular = (1..=n)
        .map(|j| {
            let order = if exact && j == n { 0.0 } else { q - j as f64 * alpha };
            SingularTerm::new(e.mu * e.sign.signed_power(lambda, j - 1), order)
        })
        .collect();
    let beta = if exact { alpha } else { (n + 1) as f64 * alpha - q };
    let regular = vec![RegularTerm::MittagLeffler {
        coeff: e.mu * e.sign.signed_power(lambda, n),
        alpha,
        beta,
        sign: e.sign,
        lambda,
        t_power: beta - 1.0,
    }];
    GeneralizedFunction::new(singular, regular)
}

fn invert_shifted(e: &LaplaceExpr, report: &mut InversionReport) -> GeneralizedFunction {
    let (q, alpha, lambda) = (e.q, e.alpha, e.lambda);
    if lambda == 0.0 {
        return power_of_s(e.mu, q - alpha, report);
    }
    let coeff = e.mu * rgamma(alpha);
    if q == 0.0 {
        return GeneralizedFunction::new(
            vec![],
            vec![RegularTerm::ExpPower {
                coeff,
                p: alpha - 1.0,
                sign: e.sign,
                lambda,
            }],
        );
    }
    // d^q [t^{α-1} e^{±λt}] = Σ_k (±λ)^k Γ(α+k)/k! · t^{α+k-1-q}/Γ(α+k-q); the
    // terms with α+k-q ≤ 0 are delta derivatives of order q-α-k.
    let mut d = q - alpha;
    let mut q_eff = q;
    let mut exact = false;
    if let Some(r) = snap_integer(d) {
        if r >= 0.0 {
            d = r;
            q_eff = alpha + r;
            exact = true;
        }
    }
    let m = if d >= 0.0 { d.floor() as u32 + 1 } else { 0 };
    report.extracted = m;
    report.exact_multiple = exact;
    let mut singular = Vec::with_capacity(m as usize);
    let mut poch = 1.0; // (α)_k / k!
    for k in 0..m {
        singular.push(SingularTerm::new(
            e.mu * (poch * e.sign.signed_power(lambda, k)),
            d - k as f64,
        ));
        poch *= (alpha + k as f64) / (k as f64 + 1.0);
    }
    let regular = vec![RegularTerm::ExpPowerDerivative {
        coeff,
        order: q_eff,
        p: alpha - 1.0,
        sign: e.sign,
        lambda,
        skip: m,
    }];
    GeneralizedFunction::new(singular, regular)
}

/// Inverse transform together with an [`InversionReport`].
pub fn invert_with_report(e: &LaplaceExpr) -> Result<(GeneralizedFunction, InversionReport)> {
    e.validate()?;
    let mut report = InversionReport::default();
    let f = match e.family {
        Family::PureMonomial => {
            let order = snap_integer(e.q).unwrap_or(e.q);
            GeneralizedFunction::new(vec![SingularTerm::new(e.mu, order)], vec![])
        }
        Family::BinomialAlpha => invert_binomial(e, &mut report),
        Family::ShiftedPower => invert_shifted(e, &mut report),
    };
    Ok((simplify(&f), report))
}

/// Inverse Laplace transform as a [`GeneralizedFunction`].
pub fn invert(e: &LaplaceExpr) -> Result<GeneralizedFunction> {
    invert_with_report(e).map(|(f, _)| f)
}

/// Result of differentiating a power law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FracDerivative {
    Regular(RegularTerm),
    Singular(SingularTerm),
}

/// `d^q t^{α-1}/dt^q = Γ(α)/Γ(α-q) · t^{α-1-q}`; when `q - α` is a
/// non-negative integer `n` this is `Γ(α) d^nδ(t)/dt^n`.
pub fn frac_derivative_power_law(alpha: f64, q: f64) -> Result<FracDerivative> {
    if !(alpha > 0.0) || !alpha.is_finite() || !(q >= 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("need alpha > 0 and q >= 0, got alpha = {alpha}, q = {q}")));
    }
    let gamma_alpha = 1.0 / rgamma(alpha);
    match snap_integer(q - alpha) {
        Some(n) if n >= 0.0 => Ok(FracDerivative::Singular(SingularTerm::new(gamma_alpha, n))),
        _ => Ok(FracDerivative::Regular(RegularTerm::Power {
            coeff: gamma_alpha * rgamma(alpha - q),
            p: alpha - 1.0 - q,
        })),
    }
}
