use std::f64::consts::PI;

/// Arguments closer than this to a non-positive integer are treated as
/// sitting exactly on a pole of Γ, where `1/Γ` vanishes.
pub const POLE_SNAP: f64 = 1e-12;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `sin(πx)` with exact argument reduction, so that zeros at integers are
/// exact and values near integers keep full relative accuracy.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // r in [-1, 1]
    let r = x - 2.0 * (0.5 * x).round();
    let v = if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        (PI * (-1.0 - r)).sin()
    } else {
        (PI * r).sin()
    };
    if r == 0.0 || r.abs() == 1.0 {
        0.0
    } else {
        v
    }
}

/// Γ(x) for x ≥ 0.5.
fn gamma_pos(x: f64) -> f64 {
    if x == x.floor() && x <= 23.0 {
        return factorial(x as u32 - 1);
    }
    if x < STIRLING_MIN {
        let (y, prod) = lift(x);
        return gamma_pos(y) / prod;
    }
    // Split the power so x^(x-1/2) does not overflow before e^-x scales it.
    let half = x.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * (half * (-x).exp()) * half * stirling_correction(x).exp()
}

/// Below this the argument is lifted by the recurrence before the
/// Stirling series is used.
const STIRLING_MIN: f64 = 8.0;

/// `(x + k, x (x+1) … (x+k-1))` with the smallest `k` reaching
/// [`STIRLING_MIN`].
fn lift(x: f64) -> (f64, f64) {
    let mut y = x;
    let mut prod = 1.0;
    while y < STIRLING_MIN {
        prod *= y;
        y += 1.0;
    }
    (y, prod)
}

/// `ln Γ(x) - [(x-1/2) ln x - x + ln √(2π)]` for `x ≥ 8`; the first
/// omitted term is below `1e-16`.
fn stirling_correction(x: f64) -> f64 {
    // B_{2k} / (2k (2k-1)) for k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let r = 1.0 / x;
    let r2 = r * r;
    C.iter().rev().fold(0.0, |acc, &c| acc * r2 + c) * r
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `ln|Γ(x)|` for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x
        return ln_gamma(x + 1.0) - x.ln();
    }
    if x < STIRLING_MIN {
        let (y, prod) = lift(x);
        return ln_gamma(y) - prod.ln();
    }
    LN_SQRT_2PI + (x - 0.5) * x.ln() - x + stirling_correction(x)
}

/// Reciprocal gamma function `1/Γ(x)`.
///
/// Total on the finite reals: returns exactly `0.0` at (and within
/// [`POLE_SNAP`] of) the poles `x = 0, -1, -2, …`.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if x <= 0.0 && (x - x.round()).abs() < POLE_SNAP {
        return 0.0;
    }
    if (-20.0..STIRLING_MIN).contains(&x) {
        // Each factor x+i is computed with a relative error of at most half
        // an ulp, which keeps the result accurate right up to the poles.
        let (y, prod) = lift(x);
        return prod / gamma_pos(y);
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let s = sin_pi(x);
        let one_minus = 1.0 - x;
        if one_minus > 171.0 {
            let ln = ln_gamma(one_minus) - PI.ln();
            return s.signum() * (s.abs().ln() + ln).exp();
        }
        return s * gamma_pos(one_minus) / PI;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma_pos(x)
}
