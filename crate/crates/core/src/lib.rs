//! Inverse Laplace transforms of the irrational family
//! `s^q`, `s^q/(s∓λ)^α` and `s^q/(s^α∓λ)` for real, positive exponents.
//!
//! Results are [`GeneralizedFunction`]s: a singular part made of weighted
//! (possibly fractional) derivatives of the Dirac delta at the origin, plus a
//! regular part made of Mittag-Leffler, power-law and exponential terms that
//! can be evaluated pointwise for `t > 0`.
//!
//! ```
//! use fraclaplace::{invert, Family, LaplaceExpr, Sign};
//!
//! // s^1.5 / (s + 1)
//! let expr = LaplaceExpr::binomial(1.5, 1.0, Sign::Minus, 1.0).unwrap();
//! let f = invert(&expr).unwrap();
//! assert_eq!(f.singular.len(), 1);
//! assert_eq!(f.singular[0].order, 0.5);
//! # let _ = Family::PureMonomial;
//! ```

pub mod cli;
mod error;
pub mod gf;
pub mod inversion;
pub mod laplace;
pub mod oracles;
pub mod quadrature;
pub mod roundtrip;
pub mod special;

pub use error::{Error, Result};
pub use gf::{
    eval_regular_part, eval_singular_as_function, format_gf, simplify, GeneralizedFunction,
    RegularTerm, Sign, SingularTerm,
};
pub use inversion::{
    frac_derivative_power_law, invert, invert_with_report, FracDerivative, Family,
    InversionReport, LaplaceExpr,
};
pub use laplace::forward_laplace;
pub use special::{ml_eval, ml_one_param, rabotnov_eval, rgamma, EvalResult, MLParams};
