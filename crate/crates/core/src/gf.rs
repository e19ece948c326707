//! Generalized functions on `t ∈ [0, ∞)`: a singular part made of weighted
//! derivatives of the Dirac delta at the origin plus a regular part that is
//! an ordinary function for `t > 0`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::special::{ml_eval, rgamma, EvalResult, MLParams};
use crate::{Error, Result};

/// Sign of `λ` in the time domain: `Plus` gives `e^{+λt}` / `E(+λt^α)` and
/// corresponds to a denominator `s ∓ λ` with the minus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn apply(self, x: f64) -> f64 {
        self.as_f64() * x
    }

    /// `(±λ)^k`.
    pub fn signed_power(self, lambda: f64, k: u32) -> f64 {
        let mag = lambda.powi(k as i32);
        if self == Sign::Minus && k % 2 == 1 {
            -mag
        } else {
            mag
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `coeff · d^order δ(t-0) / dt^order`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularTerm {
    pub coeff: f64,
    pub order: f64,
}

impl SingularTerm {
    pub fn new(coeff: f64, order: f64) -> Self {
        Self { coeff, order }
    }
}

/// Terms of the regular part. Each one is an ordinary function for `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularTerm {
    /// `coeff · t^{t_power} · E_{α,β}(±λ t^α)`.
    MittagLeffler {
        coeff: f64,
        alpha: f64,
        beta: f64,
        sign: Sign,
        lambda: f64,
        t_power: f64,
    },
    /// `coeff · t^p`.
    Power { coeff: f64, p: f64 },
    /// `coeff · t^p · e^{±λt}`.
    ExpPower {
        coeff: f64,
        p: f64,
        sign: Sign,
        lambda: f64,
    },
    /// `coeff · d^order/dt^order [t^p e^{±λt}]` (Riemann-Liouville, pointwise
    /// for `t > 0`) with the first `skip` terms of its power series
    /// `Σ_k (±λ)^k Γ(p+1+k) / (k! Γ(p+1+k-order)) t^{p+k-order}` removed.
    /// Those leading terms are the ones carried as delta derivatives.
    ExpPowerDerivative {
        coeff: f64,
        order: f64,
        p: f64,
        sign: Sign,
        lambda: f64,
        skip: u32,
    },
}

impl RegularTerm {
    pub fn coeff(&self) -> f64 {
        match *self {
            RegularTerm::MittagLeffler { coeff, .. }
            | RegularTerm::Power { coeff, .. }
            | RegularTerm::ExpPower { coeff, .. }
            | RegularTerm::ExpPowerDerivative { coeff, .. } => coeff,
        }
    }

    pub fn with_coeff(mut self, c: f64) -> Self {
        match &mut self {
            RegularTerm::MittagLeffler { coeff, .. }
            | RegularTerm::Power { coeff, .. }
            | RegularTerm::ExpPower { coeff, .. }
            | RegularTerm::ExpPowerDerivative { coeff, .. } => *coeff = c,
        }
        self
    }

    /// Parameters other than the coefficient agree bit for bit.
    pub fn same_shape(&self, other: &RegularTerm) -> bool {
        self.with_coeff(0.0).shape_bits() == other.with_coeff(0.0).shape_bits()
    }

    fn shape_bits(&self) -> (u8, [u64; 5]) {
        let b = f64::to_bits;
        match *self {
            RegularTerm::MittagLeffler {
                alpha,
                beta,
                sign,
                lambda,
                t_power,
                ..
            } => (0, [b(alpha), b(beta), sign as u64, b(lambda), b(t_power)]),
            RegularTerm::Power { p, .. } => (1, [b(p), 0, 0, 0, 0]),
            RegularTerm::ExpPower { p, sign, lambda, .. } => (2, [b(p), sign as u64, b(lambda), 0, 0]),
            RegularTerm::ExpPowerDerivative {
                order,
                p,
                sign,
                lambda,
                skip,
                ..
            } => (3, [b(order), b(p), sign as u64, b(lambda), skip as u64]),
        }
    }

    /// Exponent of the leading power of `t` near the origin.
    pub fn leading_exponent(&self) -> f64 {
        match *self {
            RegularTerm::MittagLeffler { t_power, .. } => t_power,
            RegularTerm::Power { p, .. } | RegularTerm::ExpPower { p, .. } => p,
            RegularTerm::ExpPowerDerivative { order, p, skip, .. } => p + skip as f64 - order,
        }
    }

    /// Abscissa of convergence of the term's Laplace integral (ignoring the
    /// behaviour at `t = 0`).
    pub fn abscissa(&self) -> f64 {
        match *self {
            RegularTerm::MittagLeffler {
                alpha, sign, lambda, ..
            } => ml_abscissa(alpha, sign, lambda),
            RegularTerm::Power { .. } => 0.0,
            RegularTerm::ExpPower { sign, lambda, .. } | RegularTerm::ExpPowerDerivative { sign, lambda, .. } => {
                match sign {
                    Sign::Plus => lambda,
                    Sign::Minus => 0.0,
                }
            }
        }
    }

    /// Pointwise value for `t > 0`.
    pub fn eval(&self, t: f64) -> Result<EvalResult> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("regular terms are evaluated for t > 0, got {t}")));
        }
        match *self {
            RegularTerm::MittagLeffler {
                coeff,
                alpha,
                beta,
                sign,
                lambda,
                t_power,
            } => {
                let z = sign.apply(lambda) * t.powf(alpha);
                let e = ml_eval(MLParams::new(alpha, beta, z))?;
                Ok(e.scale(coeff * t.powf(t_power)))
            }
            RegularTerm::Power { coeff, p } => {
                let v = coeff * t.powf(p);
                Ok(EvalResult::new(v, 2.0 * f64::EPSILON * v.abs()))
            }
            RegularTerm::ExpPower { coeff, p, sign, lambda } => {
                let v = coeff * t.powf(p) * (sign.apply(lambda) * t).exp();
                Ok(EvalResult::new(v, 4.0 * f64::EPSILON * (1.0 + lambda * t) * v.abs()))
            }
            RegularTerm::ExpPowerDerivative {
                coeff,
                order,
                p,
                sign,
                lambda,
                skip,
            } => Ok(exp_power_derivative(order, p, sign, lambda, skip, t).scale(coeff)),
        }
    }
}

/// Largest real part among the singularities of `s^{α-β}/(s^α ∓ λ)` on the
/// principal sheet.
pub(crate) fn ml_abscissa(alpha: f64, sign: Sign, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let r = lambda.powf(1.0 / alpha);
    let theta = match sign {
        Sign::Plus => 0.0,
        Sign::Minus => std::f64::consts::PI,
    };
    let kmax = (alpha / 2.0).ceil() as i64 + 1;
    (-kmax..=kmax)
        .filter_map(|k| {
            let ang = theta + 2.0 * std::f64::consts::PI * k as f64;
            (ang.abs() < alpha * std::f64::consts::PI).then(|| r * (ang / alpha).cos())
        })
        .fold(0.0, f64::max)
}

/// `Σ_{k≥skip} (a)_k x^k / k! · 1/Γ(b+k)`, the regularized Kummer series
/// with its first `skip` terms removed.
fn kummer_tail(a: f64, b: f64, x: f64, skip: u32) -> EvalResult {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs_sum = 0.0;
    let mut r = 1.0; // (a)_k x^k / k!
    let mut prev_abs = f64::INFINITY;
    let mut k = 0u32;
    loop {
        if k >= skip {
            let term = r * rgamma(b + k as f64);
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
            abs_sum += term.abs() * (1.0 + k as f64 * 0.25);
            let kf = k as f64;
            let past_transient = kf > x.abs() + 2.0 && kf + a > 1.0 && kf + b > 1.0;
            if past_transient && term.abs() <= prev_abs && term.abs() <= 1e-17 * (sum + comp).abs() {
                break;
            }
            if past_transient {
                prev_abs = term.abs();
            }
        }
        r *= (a + k as f64) * x / (k as f64 + 1.0);
        k += 1;
        if k > 100_000 || !r.is_finite() {
            break;
        }
    }
    let value = sum + comp;
    EvalResult::new(value, 4e-15 * abs_sum + f64::EPSILON * value.abs())
}

/// `d^q/dt^q [t^p e^{±λt}]` minus its first `skip` series terms.
fn exp_power_derivative(q: f64, p: f64, sign: Sign, lambda: f64, skip: u32, t: f64) -> EvalResult {
    let x = lambda * t;
    let gamma_p1 = 1.0 / rgamma(p + 1.0);
    let prefactor = gamma_p1 * t.powf(p - q);
    let a = p + 1.0;
    let b = p + 1.0 - q;
    // Near the origin sum the tail directly; further out the head terms are
    // small and subtracting them from the closed Kummer form is stable.
    if skip == 0 || x <= 4.0 {
        let series = if sign == Sign::Minus && skip == 0 && x > 4.0 {
            // M̃(a, b, -x) = e^{-x} M̃(b - a, b, x)
            let m = kummer_tail(b - a, b, x, 0);
            EvalResult::new(m.value * (-x).exp(), m.abs_err * (-x).exp())
        } else {
            kummer_tail(a, b, sign.apply(x), skip)
        };
        return series.scale(prefactor);
    }
    let full = match sign {
        Sign::Minus => {
            let m = kummer_tail(b - a, b, x, 0);
            EvalResult::new(m.value * (-x).exp(), m.abs_err * (-x).exp())
        }
        Sign::Plus => kummer_tail(a, b, x, 0),
    };
    let mut head = 0.0;
    let mut r = 1.0;
    for k in 0..skip {
        head += r * rgamma(b + k as f64);
        r *= (a + k as f64) * sign.apply(x) / (k as f64 + 1.0);
    }
    let v = full.value - head;
    EvalResult::new(v, full.abs_err + 16.0 * f64::EPSILON * head.abs()).scale(prefactor)
}

/// Singular part plus regular part.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedFunction {
    pub singular: Vec<SingularTerm>,
    pub regular: Vec<RegularTerm>,
}

impl GeneralizedFunction {
    pub fn new(singular: Vec<SingularTerm>, regular: Vec<RegularTerm>) -> Self {
        Self { singular, regular }
    }

    pub fn is_zero(&self) -> bool {
        self.singular.is_empty() && self.regular.is_empty()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            singular: self
                .singular
                .iter()
                .map(|s| SingularTerm::new(c * s.coeff, s.order))
                .collect(),
            regular: self.regular.iter().map(|r| r.with_coeff(c * r.coeff())).collect(),
        }
    }

    /// Pointwise value for `t > 0` including the regularized form of every
    /// singular term, which is how the fractional delta derivatives are
    /// plotted.
    pub fn eval_pointwise(&self, t: f64) -> Result<EvalResult> {
        let mut acc = eval_regular_part(self, t)?;
        for s in &self.singular {
            let v = eval_singular_as_function(s, t)?;
            acc = acc + EvalResult::new(v, 4.0 * f64::EPSILON * v.abs());
        }
        Ok(acc)
    }
}

/// Sum of the regular terms at `t > 0`; singular terms are excluded.
pub fn eval_regular_part(f: &GeneralizedFunction, t: f64) -> Result<EvalResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("regular part is evaluated for t > 0, got {t}")));
    }
    f.regular
        .iter()
        .try_fold(EvalResult::exact(0.0), |acc, term| Ok(acc + term.eval(t)?))
}

/// Pointwise regularization `coeff / (Γ(-μ) t^{μ+1})` of a delta derivative
/// for `t > 0`. Integer orders give exactly zero.
pub fn eval_singular_as_function(term: &SingularTerm, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "delta derivatives have a pointwise form only for t > 0, got {t}"
        )));
    }
    let r = rgamma(-term.order);
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(term.coeff * r / t.powf(term.order + 1.0))
}

/// Merges terms whose parameters agree bit for bit, drops zero coefficients
/// and orders the singular part by descending order.
pub fn simplify(f: &GeneralizedFunction) -> GeneralizedFunction {
    let mut singular: Vec<SingularTerm> = Vec::with_capacity(f.singular.len());
    for s in &f.singular {
        match singular.iter_mut().find(|x| x.order.to_bits() == s.order.to_bits()) {
            Some(x) => x.coeff += s.coeff,
            None => singular.push(*s),
        }
    }
    singular.retain(|s| s.coeff != 0.0);
    singular.sort_by(|a, b| b.order.total_cmp(&a.order));

    let mut regular: Vec<RegularTerm> = Vec::with_capacity(f.regular.len());
    for r in &f.regular {
        match regular.iter_mut().find(|x| x.same_shape(r)) {
            Some(x) => *x = x.with_coeff(x.coeff() + r.coeff()),
            None => regular.push(*r),
        }
    }
    regular.retain(|r| r.coeff() != 0.0);

    GeneralizedFunction { singular, regular }
}

fn num(x: f64) -> String {
    // avoid "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

/// Exponent: bare when a non-negative integer, braced otherwise.
fn pow(x: f64) -> String {
    if x >= 0.0 && x.fract() == 0.0 {
        num(x)
    } else {
        format!("{{{}}}", num(x))
    }
}

fn render_singular(s: &SingularTerm, out: &mut String) {
    let mag = s.coeff.abs();
    if mag != 1.0 {
        let _ = write!(out, "{}·", num(mag));
    }
    if s.order == 0.0 {
        out.push_str("δ(t)");
    } else {
        let o = pow(s.order);
        let _ = write!(out, "d^{o}δ(t)/dt^{o}");
    }
}

fn render_lambda_arg(sign: Sign, lambda: f64) -> String {
    match sign {
        Sign::Plus => num(lambda),
        Sign::Minus => format!("−{}", num(lambda)),
    }
}

fn render_regular(r: &RegularTerm, out: &mut String) {
    let mag = num(r.coeff().abs());
    match *r {
        RegularTerm::MittagLeffler {
            alpha,
            beta,
            sign,
            lambda,
            t_power,
            ..
        } => {
            let _ = write!(
                out,
                "{mag}·t^{}·E_{{{},{}}}({}·t^{})",
                pow(t_power),
                num(alpha),
                num(beta),
                render_lambda_arg(sign, lambda),
                pow(alpha)
            );
        }
        RegularTerm::Power { p, .. } => {
            let _ = write!(out, "{mag}·t^{}", pow(p));
        }
        RegularTerm::ExpPower { p, sign, lambda, .. } => {
            let _ = write!(out, "{mag}·t^{}·e^{{{}·t}}", pow(p), render_lambda_arg(sign, lambda));
        }
        RegularTerm::ExpPowerDerivative {
            order,
            p,
            sign,
            lambda,
            skip,
            ..
        } => {
            let o = pow(order);
            let inner = format!("d^{o}[t^{}·e^{{{}·t}}]/dt^{o}", pow(p), render_lambda_arg(sign, lambda));
            if skip == 0 {
                let _ = write!(out, "{mag}·{inner}");
            } else {
                let _ = write!(out, "{mag}·tail_{{{skip}}}({inner})");
            }
        }
    }
}

/// Deterministic text rendering; see the README for the grammar.
pub fn format_gf(f: &GeneralizedFunction) -> String {
    let mut out = String::new();
    let mut first = true;
    let mut sep = |neg: bool, out: &mut String| {
        if first {
            if neg {
                out.push('−');
            }
            first = false;
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
    };
    for s in &f.singular {
        sep(s.coeff < 0.0, &mut out);
        render_singular(s, &mut out);
    }
    for r in &f.regular {
        sep(r.coeff() < 0.0, &mut out);
        render_regular(r, &mut out);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl std::fmt::Display for GeneralizedFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_gf(self))
    }
}
