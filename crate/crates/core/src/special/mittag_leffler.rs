//! Two-parameter Mittag-Leffler function `E_{α,β}(z)` for real `z`.
//!
//! Two schemes are combined:
//!
//! * the Taylor series `Σ z^j / Γ(αj+β)` with compensated summation, used
//!   near the origin as long as the cancellation it suffers can be bounded;
//! * the Hankel integral `E_{α,β}(z) = (2πi)⁻¹ ∫ e^s s^{α-β} / (s^α - z) ds`
//!   on a parabolic contour, discretised by the trapezoidal rule, with the
//!   residues `α⁻¹ s*^{1-β} e^{s*}` of the poles left outside the contour
//!   added back.
//!
//! The contour route covers the whole negative axis, including the
//! exponentially small oscillating pole contributions that any purely
//! algebraic large-`|z|` expansion misses for `1 ≤ α < 2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma, rgamma};
use super::{EvalResult, MLParams};
use crate::gf::Sign;
use crate::{Error, Result};

/// Relative accuracy assumed for a single series term `z^j / Γ(αj+β)`.
const TERM_REL_ERR: f64 = 4e-15;
const MAX_SERIES_TERMS: usize = 20_000;

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlScheme {
    ClosedForm,
    Series,
    Contour,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlConfig {
    /// The series is only attempted for `|z|` up to this radius.
    pub series_radius: f64,
    /// Accuracy the schemes aim for, relative to `max(1, |E|)`.
    pub target: f64,
    /// Accuracy that must be certified, relative to `max(1, |E|)`;
    /// anything worse is reported as [`Error::NonConvergent`].
    pub tol: f64,
}

impl Default for MlConfig {
    fn default() -> Self {
        Self {
            series_radius: 10.0,
            target: 1e-13,
            tol: 1e-10,
        }
    }
}

/// `E_{α,β}(z)` with the default configuration.
pub fn ml_eval(p: MLParams) -> Result<EvalResult> {
    ml_eval_with(p, &MlConfig::default()).map(|(r, _)| r)
}

/// One-parameter Mittag-Leffler function `E_α(z) = E_{α,1}(z)`.
pub fn ml_one_param(alpha: f64, z: f64) -> Result<EvalResult> {
    ml_eval(MLParams::new(alpha, 1.0, z))
}

/// Rabotnov function `ε_{α-1}(±λ, t) = t^{α-1} E_{α,α}(±λ t^α)`.
pub fn rabotnov_eval(alpha: f64, sign: Sign, lambda: f64, t: f64) -> Result<EvalResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("Rabotnov function needs t > 0, got {t}")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("λ must be non-negative, got {lambda}")));
    }
    let z = sign.apply(lambda) * t.powf(alpha);
    let e = ml_eval(MLParams::new(alpha, alpha, z))?;
    Ok(e.scale(t.powf(alpha - 1.0)))
}

/// `E_{α,β}(z)` along with the scheme that produced it.
pub fn ml_eval_with(p: MLParams, cfg: &MlConfig) -> Result<(EvalResult, MlScheme)> {
    let MLParams { alpha, beta, z } = p;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("α must be positive, got {alpha}")));
    }
    if !beta.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument β={beta}, z={z}")));
    }
    if z == 0.0 {
        return Ok((EvalResult::exact(rgamma(beta)), MlScheme::ClosedForm));
    }
    if let Some(v) = closed_form(alpha, beta, z) {
        return Ok((EvalResult::new(v, 4.0 * f64::EPSILON * v.abs()), MlScheme::ClosedForm));
    }

    if z > 0.0 {
        // the dominant pole residue α⁻¹ s^{1-β} e^{s}, s = z^{1/α}
        let s = z.powf(1.0 / alpha);
        let ln_size = s + (1.0 - beta) * s.ln() - alpha.ln();
        if ln_size > f64::MAX.ln() {
            return Err(Error::Domain(format!(
                "E_{{{alpha},{beta}}}({z}) ≈ e^{ln_size:.0} overflows a double"
            )));
        }
    }

    let accepts = |r: &EvalResult, rel: f64| r.value.is_finite() && r.abs_err <= rel * r.value.abs().max(1.0);

    let mut best: Option<(EvalResult, MlScheme)> = None;
    let keep = |cand: EvalResult, scheme: MlScheme, best: &mut Option<(EvalResult, MlScheme)>| {
        let better = match best {
            None => true,
            Some((b, _)) => !b.value.is_finite() || (cand.value.is_finite() && cand.abs_err < b.abs_err),
        };
        if better {
            *best = Some((cand, scheme));
        }
    };

    let series_first = z.abs() <= cfg.series_radius && series_is_promising(alpha, beta, z, cfg.target);
    if series_first {
        if let Some(r) = series(alpha, beta, z) {
            if accepts(&r, cfg.target) {
                return Ok((r, MlScheme::Series));
            }
            keep(r, MlScheme::Series, &mut best);
        }
    }
    let c = contour(alpha, beta, z, cfg.target);
    if accepts(&c, cfg.target) {
        return Ok((c, MlScheme::Contour));
    }
    keep(c, MlScheme::Contour, &mut best);
    if !series_first && z.abs() <= cfg.series_radius {
        if let Some(r) = series(alpha, beta, z) {
            keep(r, MlScheme::Series, &mut best);
        }
    }

    let (r, scheme) = best.expect("contour always yields a candidate");
    if accepts(&r, cfg.tol) {
        Ok((r, scheme))
    } else {
        Err(Error::NonConvergent {
            value: r.value,
            abs_err: r.abs_err,
        })
    }
}

/// Exact reductions: `E_{1,1}(z) = e^z`, `E_{2,1}(∓x²) = cos x / cosh x`,
/// `E_{2,2}(∓x²) = sin x / x, sinh x / x`.
fn closed_form(alpha: f64, beta: f64, z: f64) -> Option<f64> {
    if alpha == 1.0 && beta == 1.0 {
        return Some(z.exp());
    }
    if alpha == 2.0 {
        let x = z.abs().sqrt();
        if beta == 1.0 {
            return Some(if z < 0.0 { x.cos() } else { x.cosh() });
        }
        if beta == 2.0 {
            return Some(if z < 0.0 { x.sin() / x } else { x.sinh() / x });
        }
    }
    None
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `log |z^j / Γ(αj+β)|`, or `None` when the term vanishes (pole of Γ).
fn ln_term(alpha: f64, beta: f64, ln_abs_z: f64, j: usize) -> Option<f64> {
    let arg = alpha * j as f64 + beta;
    if arg > 0.0 {
        Some(j as f64 * ln_abs_z - ln_gamma(arg))
    } else {
        let r = rgamma(arg);
        (r != 0.0).then(|| j as f64 * ln_abs_z + r.abs().ln())
    }
}

/// Cheap check that the largest series term is small enough for the
/// cancellation on the negative axis to stay below `target`.
fn series_is_promising(alpha: f64, beta: f64, z: f64, target: f64) -> bool {
    if z > 0.0 {
        return true;
    }
    let ln_abs_z = z.abs().ln();
    let mut max_ln = f64::NEG_INFINITY;
    let mut prev = f64::NEG_INFINITY;
    for j in 0..MAX_SERIES_TERMS {
        let Some(l) = ln_term(alpha, beta, ln_abs_z, j) else { continue };
        max_ln = max_ln.max(l);
        if TERM_REL_ERR * max_ln.exp() > target {
            return false;
        }
        let arg = alpha * j as f64 + beta;
        if arg > 2.0 && l < prev && l < max_ln - 40.0 {
            return true;
        }
        prev = l;
    }
    false
}

/// `αj + β` rounded, and the exact rounding error.
fn rounded_arg(alpha: f64, beta: f64, j: usize) -> (f64, f64) {
    let jf = j as f64;
    let p = alpha * jf;
    let ep = alpha.mul_add(jf, -p);
    let s = p + beta;
    let bb = s - p;
    let es = (p - (s - bb)) + (beta - bb);
    (s, ep + es)
}

/// Upper bound on `|ψ(x)|` away from the poles, loose by a small factor.
fn psi_bound(x: f64) -> f64 {
    let pole = if x > 0.5 { 1.0 / x } else { 1.0 / (x - x.round()).abs().max(f64::MIN_POSITIVE) };
    (x.abs() + 2.0).ln() + pole
}

/// Taylor series with a geometric tail bound. `None` when the terms never
/// start to decay within the term budget.
fn series(alpha: f64, beta: f64, z: f64) -> Option<EvalResult> {
    let ln_abs_z = z.abs().ln();
    let neg = z < 0.0;
    let mut acc = KahanSum::default();
    let mut term_err = 0.0;
    for j in 0..MAX_SERIES_TERMS {
        let (arg, arg_err) = rounded_arg(alpha, beta, j);
        // 1/Γ turns the rounding of its argument into a relative error ψ·δ
        let arg_rel = psi_bound(arg) * arg_err.abs();
        let (term, rel) = if arg < 150.0 && (j as f64) * ln_abs_z < 600.0 {
            // powi squares repeatedly and loses ~j ulps; powf does not
            let pw = z.abs().powf(j as f64);
            let sign = if neg && j % 2 == 1 { -1.0 } else { 1.0 };
            (sign * pw * rgamma(arg), TERM_REL_ERR + arg_rel)
        } else {
            let l = j as f64 * ln_abs_z - ln_gamma(arg);
            let mag = l.exp();
            let sign = if neg && j % 2 == 1 { -1.0 } else { 1.0 };
            // exp(l) carries the absolute error of l as a relative error
            (sign * mag, TERM_REL_ERR + arg_rel + 2.0 * f64::EPSILON * (j as f64 * ln_abs_z.abs() + ln_gamma(arg).abs()))
        };
        if !term.is_finite() {
            return None;
        }
        acc.add(term);
        term_err += term.abs() * rel;

        // Once Γ is increasing the ratio |z| Γ(x)/Γ(x+α) only shrinks, so
        // the remainder is dominated by a geometric series.
        if arg > 2.0 {
            let ratio = (ln_abs_z + ln_gamma(arg) - ln_gamma(arg + alpha)).exp();
            if ratio < 0.5 {
                let tail = term.abs() * ratio / (1.0 - ratio);
                let sum = acc.value();
                if tail <= 1e-3 * f64::EPSILON * sum.abs().max(f64::MIN_POSITIVE) || tail == 0.0 {
                    let abs_err = tail + term_err + f64::EPSILON * sum.abs();
                    return Some(EvalResult::new(sum, abs_err));
                }
            }
        }
    }
    None
}

const MU_DEFAULT: f64 = 4.0;
const MU_MAX: f64 = 12.0;
const MU_MIN: f64 = 1e-2;
// Poles are kept out of the band a/1.6 < √μ < a/0.6, where a = Re √s*.
const BAND_LO: f64 = 0.6;
const BAND_HI: f64 = 1.6;

struct Pole {
    s: Complex64,
    /// `Re √s`; the pole lies outside the contour when this exceeds `√μ`.
    a: f64,
}

fn poles(alpha: f64, z: f64) -> Vec<Pole> {
    let r = z.abs().powf(1.0 / alpha);
    let theta = if z > 0.0 { 0.0 } else { PI };
    let kmax = (alpha / 2.0).ceil() as i64 + 1;
    (-kmax..=kmax)
        .filter_map(|k| {
            let ang = theta + 2.0 * PI * k as f64;
            (ang.abs() <= alpha * PI).then(|| {
                let phi = ang / alpha;
                Pole {
                    s: Complex64::from_polar(r, phi),
                    a: r.sqrt() * (0.5 * phi).cos(),
                }
            })
        })
        .collect()
}

/// Allowed `√μ` values: the default, the band edges of every pole and a
/// geometric grid over `[MU_MIN, MU_MAX]`, minus those inside a band.
fn sqrt_mu_candidates(poles: &[Pole]) -> Vec<f64> {
    let forbidden = |q: f64| {
        poles
            .iter()
            .any(|p| q > p.a / BAND_HI * (1.0 + 1e-9) && q < p.a / BAND_LO * (1.0 - 1e-9))
    };
    let mut candidates = vec![MU_DEFAULT.sqrt()];
    for p in poles {
        candidates.push(p.a / BAND_HI);
        candidates.push(p.a / BAND_LO);
    }
    candidates.extend((0..=8).map(|k| (MU_MIN * (MU_MAX / MU_MIN).powf(k as f64 / 8.0)).sqrt()));
    let in_range = |q: f64| q * q >= MU_MIN * (1.0 - 1e-12) && q * q <= MU_MAX * (1.0 + 1e-12);
    let mut out: Vec<f64> = candidates.into_iter().filter(|&q| in_range(q) && !forbidden(q)).collect();
    if out.is_empty() {
        // every pole is so far out that even the smallest band edge is
        // above MU_MAX; keep all of them outside
        let amin = poles.iter().map(|p| p.a).fold(f64::INFINITY, f64::min);
        out.push((amin / BAND_HI).min(MU_MAX.sqrt()).max(MU_MIN.sqrt()));
    }
    out
}

/// Integrand on the parabola and a bound on its relative rounding error
/// in units of the machine epsilon (exp amplifies argument errors).
fn integrand(alpha: f64, beta: f64, z: f64, mu: f64, u: f64) -> (f64, f64) {
    let w = Complex64::new(1.0, u);
    let s = w * w * mu;
    let ln_s = s.ln();
    let pa = (ln_s * alpha).exp();
    let num = (ln_s * (alpha - beta)).exp();
    let den = pa - z;
    let f = (w * s.exp() * num / den).re * (mu / PI);
    let cond = 8.0 + s.norm() + ((alpha - beta).abs() + alpha) * ln_s.norm() * (1.0 + pa.norm() / den.norm());
    (f, cond)
}

/// Residues of the poles outside the contour and their rounding error.
fn residues(alpha: f64, beta: f64, poles: &[Pole], sqrt_mu: f64) -> (Complex64, f64) {
    let mut residue = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in poles.iter().filter(|p| p.a > sqrt_mu) {
        let r = (p.s.ln() * (1.0 - beta)).exp() * p.s.exp() / alpha;
        residue += r;
        err += 8.0 * f64::EPSILON * r.norm() * (1.0 + p.s.norm());
    }
    (residue, err)
}

/// Rough size of the rounding floor for a given `√μ`: a coarse L1 norm of
/// the integrand plus the residue error.
fn rounding_proxy(alpha: f64, beta: f64, z: f64, poles: &[Pole], sqrt_mu: f64) -> f64 {
    let mu = sqrt_mu * sqrt_mu;
    let u_max = (1.0 + 45.0 / mu).sqrt();
    let h = u_max / 64.0;
    let l1: f64 = (0..=64)
        .map(|k| {
            let (f, cond) = integrand(alpha, beta, z, mu, k as f64 * h);
            f.abs() * cond
        })
        .sum::<f64>()
        * h;
    let l1 = if l1.is_finite() { l1 } else { f64::INFINITY };
    l1 + residues(alpha, beta, poles, sqrt_mu).1 / f64::EPSILON
}

/// Hankel-contour evaluation on the parabola `s(u) = μ(1+iu)²`.
fn contour(alpha: f64, beta: f64, z: f64, target: f64) -> EvalResult {
    let poles = poles(alpha, z);
    let sqrt_mu = sqrt_mu_candidates(&poles)
        .into_iter()
        .map(|q| (q, rounding_proxy(alpha, beta, z, &poles, q)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(q, _)| q)
        .expect("at least one candidate");
    let mu = sqrt_mu * sqrt_mu;

    let (residue, residue_err) = residues(alpha, beta, &poles, sqrt_mu);
    let mut d_plus: f64 = 1.0;
    let mut d_minus: f64 = 1.5;
    for p in &poles {
        let rel = p.a / sqrt_mu;
        if rel > 1.0 {
            d_minus = d_minus.min(rel - 1.0);
        } else {
            d_plus = d_plus.min(1.0 - rel);
        }
    }

    let integrand = |u: f64| integrand(alpha, beta, z, mu, u);
    let value_only = |u: f64| integrand(u).0;

    // Truncate where e^{μ(1-u²)} is negligible next to the integrand peak.
    let peak = value_only(0.0).abs().max(1e-300);
    let mut u_max = (1.0 + 45.0 / mu).sqrt();
    while value_only(u_max).abs() > 1e-18 * peak.max(1.0) && u_max < 1e3 {
        u_max *= 1.25;
    }

    let d = d_plus.min(d_minus).max(0.05);
    let mut h = 2.0 * 2.0 * PI * d / (40.0 + mu * (1.0 + d_minus).powi(2));
    let n0 = (u_max / h).ceil() as usize;
    // abs_total accumulates |f| times its rounding condition
    let (mut total, c0) = integrand(0.0);
    let mut abs_total = total.abs() * c0;
    for k in 1..=n0 {
        let (f, c) = integrand(k as f64 * h);
        total += 2.0 * f;
        abs_total += 2.0 * f.abs() * c;
    }
    let mut estimate = h * total;
    let mut diff = f64::INFINITY;

    for _ in 0..10 {
        let half = 0.5 * h;
        let n = (u_max / half).ceil() as usize;
        let mut odd = 0.0;
        for k in (1..=n).step_by(2) {
            let (f, c) = integrand(k as f64 * half);
            odd += 2.0 * f;
            abs_total += 2.0 * f.abs() * c;
        }
        total += odd;
        h = half;
        let refined = h * total;
        diff = (refined - estimate).abs();
        estimate = refined;
        let value = estimate + residue.re;
        let rounding = 2.0 * f64::EPSILON * h * abs_total;
        // Convergence is geometric, so `diff` already bounds the error of
        // the coarser estimate; a diff at the rounding floor cannot shrink.
        if diff <= target * value.abs().max(1.0) || diff <= 4.0 * rounding {
            break;
        }
    }

    let value = estimate + residue.re;
    let rounding = 2.0 * f64::EPSILON * (h * abs_total + value.abs());
    EvalResult::new(value, diff + rounding + residue_err)
}
