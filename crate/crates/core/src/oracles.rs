//! Independent reference evaluators used to check the production code.
//!
//! Nothing here shares code with [`crate::special`]: the reciprocal gamma is
//! a double-double Taylor expansion with argument reduction, the
//! Mittag-Leffler oracle sums its series in double-double arithmetic, and
//! fractional derivatives come from the Grünwald-Letnikov sum.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::special::{EvalResult, MLParams};
use crate::{Error, Result};

/// Unnormalized double-double number `hi + lo`, about 32 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Unit roundoff of double-double arithmetic.
pub const DD_EPS: f64 = 4.93038065763132e-32;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

/// Taylor coefficients of `1/Γ(x)` about `x = 0` as double-double pairs.
const RGAMMA_TAYLOR: [(f64, f64); 46] = [
    (0.0, 0.0), // c0
    (1.0, 0.0), // c1
    (0.5772156649015329, -4.942915152430645e-18), // c2
    (-0.6558780715202539, 2.137185197068536e-17), // c3
    (-0.04200263503409524, 1.4920306285650505e-18), // c4
    (0.16653861138229148, 1.0189144546842026e-17), // c5
    (-0.04219773455554433, -3.3579992682480134e-18), // c6
    (-0.009621971527876973, -5.300031368830263e-19), // c7
    (0.0072189432466631, -3.6006537063394283e-19), // c8
    (-0.0011651675918590652, 5.659947853880981e-20), // c9
    (-0.00021524167411495098, 2.3758686180729364e-21), // c10
    (0.0001280502823881162, -9.359124499198967e-21), // c11
    (-2.013485478078824e-05, 3.0488773972037385e-23), // c12
    (-1.2504934821426706e-06, -2.66214092271898e-23), // c13
    (1.133027231981696e-06, -4.622235212104869e-23), // c14
    (-2.056338416977607e-07, -3.0061601618645134e-24), // c15
    (6.116095104481416e-09, -2.693458298171306e-25), // c16
    (5.002007644469223e-09, -1.538123614056751e-26), // c17
    (-1.18127457048702e-09, -1.0052356155716208e-25), // c18
    (1.0434267116911005e-10, -2.9298419956825035e-27), // c19
    (7.782263439905071e-12, 4.397255556595848e-28), // c20
    (-3.696805618642206e-12, 2.7050034921703885e-28), // c21
    (5.100370287454476e-13, 2.253001461085878e-29), // c22
    (-2.0583260535665066e-14, -1.4747481491954336e-30), // c23
    (-5.348122539423018e-15, -1.6208384686356568e-31), // c24
    (1.2267786282382608e-15, -5.072915146023867e-32), // c25
    (-1.1812593016974588e-16, 6.422257838149681e-33), // c26
    (1.1866922547516004e-18, -4.2037265494226014e-35), // c27
    (1.4123806553180319e-18, -7.576946701116294e-35), // c28
    (-2.29874568443537e-19, 1.3335481917069145e-36), // c29
    (1.7144063219273374e-20, 5.230715150426935e-38), // c30
    (1.337351730493693e-22, 2.6434059649079228e-39), // c31
    (-2.0542335517666728e-22, 3.6856892424568953e-39), // c32
    (2.736030048608e-23, -2.8599315416397774e-39), // c33
    (-1.7323564459105165e-24, -1.7540883508197598e-40), // c34
    (-2.3606190244992872e-26, -1.260225016995785e-42), // c35
    (1.8649829417172943e-26, 8.774775617290965e-43), // c36
    (-2.2180956242071973e-27, 6.809640315042753e-44), // c37
    (1.2977819749479937e-28, -3.325692466804093e-45), // c38
    (1.1806974749665284e-30, -4.184949275966516e-48), // c39
    (-1.124584349277088e-30, -2.01842815487355e-47), // c40
    (1.277085175140866e-31, 1.0535632367878753e-47), // c41
    (-7.391451169615141e-33, 1.8114253268366145e-49), // c42
    (1.1347502575542158e-35, -4.9791058715013306e-52), // c43
    (4.639134641058722e-35, 2.6040634859975098e-52), // c44
    (-5.3473368184391986e-36, -2.3112956912714733e-52), // c45
];

/// `P(y) = (1/Γ(y))/y` for `|y| ≤ 1/2`.
fn rgamma_over_y(y: Dd) -> Dd {
    let mut acc = Dd::ZERO;
    for &(hi, lo) in RGAMMA_TAYLOR[1..].iter().rev() {
        acc = acc * y + Dd { hi, lo };
    }
    acc
}

/// `z^j / Γ(x)` in double-double. Multiplications by `z` are interleaved
/// with the recurrence divisions so that intermediate values stay in range
/// whenever the result does.
fn scaled_rgamma_dd(x: Dd, z: f64, j: u32) -> Dd {
    let n = x.hi.round();
    let y = x - Dd::from(n);
    let mut acc = rgamma_over_y(y);
    let mut divisors: Vec<Dd> = Vec::new();
    if n >= 1.0 {
        // 1/Γ(y+n) = P(y) / ((y+1)(y+2)...(y+n-1))
        divisors.extend((1..n as u64).map(|k| y + Dd::from(k as f64)));
    } else {
        // 1/Γ(y+n) = (y+n)(y+n+1)...(y-1) · y · P(y)
        acc = acc * y;
        for k in (n as i64)..0 {
            acc = acc * (y + Dd::from(k as f64));
        }
    }
    let mut mults = j;
    let mut divs = divisors.into_iter().peekable();
    while mults > 0 || divs.peek().is_some() {
        let grow = acc.hi.abs() < 1.0 || divs.peek().is_none();
        if mults > 0 && grow {
            acc = acc * z;
            mults -= 1;
        } else if let Some(d) = divs.next() {
            acc = acc / d;
        } else {
            acc = acc * z;
            mults -= 1;
        }
    }
    acc
}

/// `1/Γ(x)` in double-double precision; exactly zero at non-positive
/// integers and nowhere else.
pub fn rgamma_dd(x: f64) -> Dd {
    scaled_rgamma_dd(Dd::from(x), 1.0, 0)
}

/// `1/Γ(x)` rounded to double. Independent of [`crate::rgamma`].
pub fn rgamma_hp(x: f64) -> f64 {
    rgamma_dd(x).to_f64()
}

const MAX_TERMS: u32 = 20_000;

/// `E_{α,β}(z)` by its power series summed in double-double arithmetic.
///
/// Fails with [`Error::NonConvergent`] when the cancellation between terms
/// exceeds what double-double can resolve, i.e. when the error bound exceeds
/// `target_tol · max(1, |value|)`.
pub fn ml_series_hp(p: MLParams, target_tol: f64) -> Result<EvalResult> {
    let MLParams { alpha, beta, z } = p;
    if !(alpha > 0.0) || !alpha.is_finite() || !beta.is_finite() || !z.is_finite() {
        return Err(Error::Domain(format!("ml_series_hp needs finite α > 0, β and z (got {alpha}, {beta}, {z})")));
    }
    if z == 0.0 {
        return Ok(EvalResult::new(rgamma_hp(beta), 0.0));
    }
    // Terms peak near j ≈ |z|^{1/α}/α and each costs O(j); refuse hopeless cases.
    if z.abs().powf(1.0 / alpha) / alpha > MAX_TERMS as f64 / 4.0 {
        return Err(Error::NonConvergent { value: f64::NAN, abs_err: f64::INFINITY });
    }
    let mut sum = Dd::ZERO;
    let mut abs_sum = 0.0;
    let mut ops = 0.0f64;
    let mut prev = f64::NAN;
    let mut tail = f64::INFINITY;
    for j in 0..MAX_TERMS {
        let (ah, al) = two_prod(alpha, j as f64);
        let x = Dd::new(ah, al) + Dd::from(beta);
        let term = scaled_rgamma_dd(x, z, j);
        sum = sum + term;
        let t = term.hi.abs();
        abs_sum += t;
        ops = ops.max(j as f64 + x.hi.abs() + 50.0);
        if x.hi > 2.0 && prev.is_finite() && prev > 0.0 {
            let r = t / prev;
            if r < 0.5 {
                tail = 2.0 * t * r / (1.0 - r);
                if tail <= DD_EPS * sum.hi.abs() || tail == 0.0 {
                    break;
                }
            }
        }
        prev = t;
    }
    let value = sum.to_f64();
    let abs_err = tail + 4.0 * ops * DD_EPS * abs_sum + 0.5 * f64::EPSILON * value.abs();
    if !value.is_finite() || !(abs_err <= target_tol * value.abs().max(1.0)) {
        return Err(Error::NonConvergent { value, abs_err });
    }
    Ok(EvalResult::new(value, abs_err))
}

/// Settings for [`gl_differintegral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GLConfig {
    /// Base step; `t / h` must be a whole number of steps, at least 32.
    pub h: f64,
    pub t: f64,
    /// Order; positive differentiates, negative integrates.
    pub q: f64,
    /// Richardson-extrapolate from the `h`, `h/2` and `h/4` sums.
    pub richardson: bool,
    /// Leading error exponent removed by the extrapolation (1 for smooth f).
    pub richardson_order: f64,
    /// Relative tolerance on the error estimate, against `max(1, |value|)`.
    pub tol: f64,
}

pub const GL_DEFAULT_STEPS: u32 = 1 << 14;

impl GLConfig {
    pub fn new(t: f64, q: f64) -> Self {
        Self::with_steps(t, q, GL_DEFAULT_STEPS)
    }

    pub fn with_steps(t: f64, q: f64, steps: u32) -> Self {
        GLConfig {
            h: t / steps as f64,
            t,
            q,
            richardson: true,
            richardson_order: 1.0,
            tol: 1e-3,
        }
    }

    /// Step count trading truncation (`O(h²)` after extrapolation) against
    /// the `ε h^{-q}` roundoff of the finest (`h/4`) sum. Only matters for
    /// `q > 0`; integrals use the default.
    pub fn balanced(t: f64, q: f64) -> Self {
        let d = q.max(0.0);
        let k = ((52.0 + d * t.log2()) / (d + 2.0)).round() - 3.0;
        Self::with_steps(t, q, 1 << (k.clamp(5.0, 14.0) as u32))
    }

    fn steps(&self) -> Result<u64> {
        if !(self.t > 0.0 && self.h > 0.0) || !self.t.is_finite() || !self.q.is_finite() {
            return Err(Error::Domain(format!("GL needs t > 0 and h > 0 (got t = {}, h = {})", self.t, self.h)));
        }
        let n = (self.t / self.h).round();
        if (n * self.h - self.t).abs() > 1e-9 * self.t || n < 32.0 {
            return Err(Error::Domain(format!(
                "t/h must be a whole number of steps, at least 32 (got {})",
                self.t / self.h
            )));
        }
        Ok(n as u64)
    }
}

/// Plain GL sum with `n` steps; returns the value and a roundoff estimate.
/// A non-finite `f(0)` is replaced by zero.
fn gl_sum(f: &dyn Fn(f64) -> f64, t: f64, q: f64, n: u64) -> (f64, f64) {
    let h = t / n as f64;
    let mut w = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs_sum = 0.0;
    for k in 0..=n {
        if k > 0 {
            w *= (k as f64 - 1.0 - q) / k as f64;
        }
        let x = t * ((n - k) as f64 / n as f64);
        let mut fx = f(x);
        if k == n && !fx.is_finite() {
            fx = 0.0;
        }
        let term = w * fx;
        let s = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
        sum = s;
        // w_k carries at most 3k roundings from its recurrence; f, the
        // product and the compensated sum add a few more
        abs_sum += term.abs() * (3 * k + 6) as f64;
    }
    let scale = h.powf(-q);
    let value = (sum + comp) * scale;
    let round = f64::EPSILON * abs_sum * scale + 2.0 * f64::EPSILON * value.abs();
    (value, round)
}

/// Grünwald-Letnikov approximation of `d^q f/dt^q` at `cfg.t` with lower
/// terminal 0.
pub fn gl_differintegral(f: impl Fn(f64) -> f64, cfg: &GLConfig) -> Result<EvalResult> {
    let n = cfg.steps()?;
    let (coarse, r1) = gl_sum(&f, cfg.t, cfg.q, n);
    let (fine, r2) = gl_sum(&f, cfg.t, cfg.q, 2 * n);
    let (value, abs_err) = if cfg.richardson {
        // Extrapolate the (h, h/2) and (h/2, h/4) pairs; their difference
        // bounds the error of the finer one as long as the remaining error
        // is at least first order in h.
        let (finest, r3) = gl_sum(&f, cfg.t, cfg.q, 4 * n);
        let k = 2f64.powf(cfg.richardson_order) - 1.0;
        let v1 = fine + (fine - coarse) / k;
        let v2 = finest + (finest - fine) / k;
        (v2, (v2 - v1).abs() + 2.0 * (r1 + r2 + r3))
    } else {
        (coarse, (fine - coarse).abs() + r1 + r2)
    };
    if !value.is_finite() || abs_err > cfg.tol * value.abs().max(1.0) {
        return Err(Error::StepTooCoarse { abs_err, tol: cfg.tol });
    }
    Ok(EvalResult::new(value, abs_err))
}

/// [`gl_differintegral`] at the step count, among those within a factor 4
/// of [`GLConfig::balanced`], whose error bound comes out smallest.
pub fn gl_differintegral_tuned(f: impl Fn(f64) -> f64, t: f64, q: f64, tol: f64) -> Result<EvalResult> {
    let base = GLConfig::balanced(t, q);
    let k0 = (t / base.h).round().log2() as i32;
    let mut best: Option<EvalResult> = None;
    for k in (k0 - 2).max(5)..=(k0 + 2).min(16) {
        let mut cfg = GLConfig::with_steps(t, q, 1 << k);
        cfg.tol = f64::INFINITY;
        let r = gl_differintegral(&f, &cfg)?;
        if best.is_none_or(|b| r.abs_err < b.abs_err) {
            best = Some(r);
        }
    }
    let r = best.expect("at least one step count");
    if !(r.abs_err <= tol * r.value.abs().max(1.0)) {
        return Err(Error::StepTooCoarse { abs_err: r.abs_err, tol });
    }
    Ok(r)
}

/// Like [`gl_differintegral`] for `f` whose behaviour at the origin is
/// `Σ c·t^p`: those powers are differentiated analytically and only the
/// remainder goes through the GL sum.
pub fn gl_differintegral_start_corrected(
    f: impl Fn(f64) -> f64,
    leading: &[(f64, f64)],
    cfg: &GLConfig,
) -> Result<EvalResult> {
    let remainder = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        f(x) - leading.iter().map(|&(c, p)| c * x.powf(p)).sum::<f64>()
    };
    let smooth = gl_differintegral(remainder, cfg)?;
    let analytic: f64 = leading
        .iter()
        .map(|&(c, p)| c * rgamma_hp(p + 1.0 - cfg.q) / rgamma_hp(p + 1.0) * cfg.t.powf(p - cfg.q))
        .sum();
    Ok(EvalResult::new(
        smooth.value + analytic,
        smooth.abs_err + 4.0 * f64::EPSILON * analytic.abs(),
    ))
}
