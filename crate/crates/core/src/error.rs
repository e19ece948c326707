use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluation scheme could not certify its accuracy target. The best
    /// available value and its error bound are carried along.
    #[error("no scheme reached the accuracy target (best value {value:e}, error bound {abs_err:e})")]
    NonConvergent { value: f64, abs_err: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid expression: {0}")]
    InvalidExpr(String),

    #[error("unsupported expression: {0}")]
    UnsupportedExpr(String),

    #[error("Laplace integral diverges: s = {s} is not above the abscissa of convergence {abscissa}")]
    DivergentTransform { s: f64, abscissa: f64 },

    #[error("quadrature missed its target (estimate {value:e}, error bound {abs_err:e})")]
    QuadratureFailure { value: f64, abs_err: f64 },

    #[error("Grünwald-Letnikov step too coarse: extrapolation error {abs_err:e} exceeds {tol:e}")]
    StepTooCoarse { abs_err: f64, tol: f64 },
}
