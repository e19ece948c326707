//! Reciprocal gamma, Mittag-Leffler and Rabotnov functions on the real axis.

mod gamma;
mod mittag_leffler;

pub use gamma::{ln_gamma, rgamma, sin_pi, POLE_SNAP};
pub use mittag_leffler::{ml_eval, ml_eval_with, ml_one_param, rabotnov_eval, MlConfig, MlScheme};

use serde::Serialize;

/// Arguments of the two-parameter Mittag-Leffler function `E_{α,β}(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    /// May be zero or negative; the series is still well defined because
    /// `1/Γ` is entire.
    pub beta: f64,
    pub z: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64, z: f64) -> Self {
        Self { alpha, beta, z }
    }
}

/// A numeric value together with an estimated bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
}

impl EvalResult {
    pub fn new(value: f64, abs_err: f64) -> Self {
        Self { value, abs_err }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, abs_err: 0.0 }
    }

    /// Multiplies value and bound by a constant known to working precision.
    pub fn scale(self, c: f64) -> Self {
        let value = self.value * c;
        Self {
            value,
            abs_err: self.abs_err * c.abs() + f64::EPSILON * value.abs(),
        }
    }
}

impl std::ops::Add for EvalResult {
    type Output = EvalResult;

    fn add(self, rhs: EvalResult) -> EvalResult {
        let value = self.value + rhs.value;
        EvalResult {
            value,
            abs_err: self.abs_err + rhs.abs_err + 0.5 * f64::EPSILON * value.abs(),
        }
    }
}
