//! Random round-trip checks: invert an expression, transform the result
//! forward again by quadrature and compare with the expression at real `s`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gf::Sign;
use crate::inversion::{invert, Family, LaplaceExpr};
use crate::laplace::forward_laplace;

/// Half-width of the excluded bands around `q = jα` (and `q = α + k` for
/// the shifted family).
pub const BAND: f64 = 0.05;

/// Draws `n` expressions, cycling through the three families. Parameters:
/// `α ∈ [0.3, 2]`, `λ ∈ [0.25, 4]`, `q ∈ [0, 3.5]`, `μ ∈ [0.5, 2]`, random sign.
pub fn sample_cases(seed: u64, n: usize) -> Vec<LaplaceExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = [Family::PureMonomial, Family::ShiftedPower, Family::BinomialAlpha];
    (0..n)
        .map(|i| {
            let family = families[i % 3];
            let alpha = rng.gen_range(0.3..=2.0);
            let lambda = rng.gen_range(0.25..=4.0);
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let mu = rng.gen_range(0.5..=2.0);
            let q = loop {
                let q: f64 = rng.gen_range(0.0..=3.5);
                let near = match family {
                    Family::PureMonomial => false,
                    Family::BinomialAlpha => {
                        let j = (q / alpha).round();
                        j >= 1.0 && (q - j * alpha).abs() < BAND
                    }
                    Family::ShiftedPower => {
                        let d = q - alpha;
                        d > -BAND && (d - d.round()).abs() < BAND
                    }
                };
                if !near {
                    break q;
                }
            };
            LaplaceExpr {
                mu,
                q,
                family,
                alpha,
                sign,
                lambda,
            }
        })
        .collect()
}

/// Sample points: `{λ+1, 2λ+1, 5λ+3}` when the inverse decays, otherwise
/// `{1.5σ+1, 2σ+1, 5σ+3}` with `σ` the abscissa of convergence.
pub fn s_points(e: &LaplaceExpr) -> [f64; 3] {
    let sigma = e.abscissa();
    if sigma > 0.0 {
        [1.5 * sigma + 1.0, 2.0 * sigma + 1.0, 5.0 * sigma + 3.0]
    } else {
        [e.lambda + 1.0, 2.0 * e.lambda + 1.0, 5.0 * e.lambda + 3.0]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub index: usize,
    pub expr: LaplaceExpr,
    pub s: [f64; 3],
    /// Relative errors at the three `s` points; NaN where evaluation failed.
    pub rel_err: [f64; 3],
    pub error: Option<String>,
}

impl CaseOutcome {
    pub fn max_rel_err(&self) -> f64 {
        self.rel_err.iter().fold(0.0, |m, &e| if e.is_nan() { f64::INFINITY } else { m.max(e) })
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.error.is_none() && self.max_rel_err() <= tol
    }
}

pub fn check_case(index: usize, expr: LaplaceExpr) -> CaseOutcome {
    let s = s_points(&expr);
    let mut rel_err = [f64::NAN; 3];
    let mut error = None;
    match invert(&expr) {
        Ok(f) => {
            for (k, &sk) in s.iter().enumerate() {
                let res = forward_laplace(&f, sk).and_then(|num| Ok((num, expr.eval(sk)?)));
                match res {
                    Ok((num, want)) => rel_err[k] = (num.value - want).abs() / want.abs(),
                    Err(e) => {
                        error = Some(format!("s = {sk}: {e}"));
                        break;
                    }
                }
            }
        }
        Err(e) => error = Some(e.to_string()),
    }
    CaseOutcome {
        index,
        expr,
        s,
        rel_err,
        error,
    }
}

/// Runs [`check_case`] over [`sample_cases`] in parallel; results come back
/// in case order.
pub fn run(seed: u64, n: usize) -> Vec<CaseOutcome> {
    sample_cases(seed, n)
        .into_par_iter()
        .enumerate()
        .map(|(i, e)| check_case(i, e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_respects_bands() {
        let a = sample_cases(7, 60);
        assert_eq!(a, sample_cases(7, 60));
        for e in &a {
            if e.family == Family::BinomialAlpha {
                let j = (e.q / e.alpha).round();
                assert!(j < 1.0 || (e.q - j * e.alpha).abs() >= BAND);
            }
        }
    }

    #[test]
    fn growing_cases_sample_above_the_abscissa() {
        let e = LaplaceExpr::binomial(0.5, 0.3, Sign::Plus, 4.0).unwrap();
        let s = s_points(&e);
        assert!(s.iter().all(|&x| x > e.abscissa()));
    }
}
