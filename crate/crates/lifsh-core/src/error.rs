use thiserror::Error;

/// Failure modes shared by the series, quadrature and assembly layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    /// The requested point lies outside the validity region of every
    /// implemented route (argument outside all convergence discs, parameter
    /// out of range, and so on).
    #[error("domain: {0}")]
    Domain(String),

    /// A parameter sits exactly on a pole of the target function, typically a
    /// non-positive integer lower hypergeometric parameter.
    #[error("pole: {0}")]
    Pole(String),

    /// Summation or subdivision stopped at its budget before the requested
    /// tolerance was met. Overflowing partial sums are reported through this
    /// variant as well instead of silently returning infinities.
    #[error("no convergence after {terms} steps (best error estimate {abs_err:.3e})")]
    NoConvergence {
        /// Series terms summed or quadrature subdivisions spent.
        terms: usize,
        /// Error estimate at the point where the budget ran out.
        abs_err: f64,
    },

    /// An integrand could not be evaluated or an integral representation does
    /// not apply (pole on the integration path, uncontrollable tail).
    #[error("quadrature: {0}")]
    Quadrature(String),
}
