//! Numerical toolbox for a two-loop anisotropic propagator integral.
//!
//! The central object is the massless two-loop two-point function `I_{1,m}(p, q)`
//! built from one one-dimensional quadratic momentum line and an
//! `m`-dimensional line that enters quartically. The crate evaluates it in
//! closed form through Gauss hypergeometric functions of complex argument and
//! cross-checks every reduction step against independent routes:
//!
//! * [`series`] sums generalized hypergeometric series `pFq` with explicit
//!   convergence control and a transformation ladder for `2F1` that covers
//!   complex arguments outside the unit disc.
//! * [`appell`] sums the two-variable Appell functions `F1`, `F2`, `F4` and the
//!   Horn function `H4`, plus single-series and closed-form routes for `H4`.
//! * [`cxexp`] splits `2F1` of a complex argument into explicit real and
//!   imaginary parts in several independent ways (regrouped polar series,
//!   `3F2` coefficient series, a Laplace-type integral, and `H4` bridges).
//! * [`feynman`] carries the integral assembly: one-loop inner integrals in
//!   continuous dimension, the closed form for `I_{1,m}`, integer-`m`
//!   reductions, axis limits, and a Horn-function route.
//! * [`oracle`] re-computes everything by brute-force adaptive quadrature of
//!   the defining momentum integrals.
//! * [`verify`] packages the cross-route comparisons into named suites shared
//!   by the command line tool and the acceptance tests.
//!
//! Evaluators return [`SeriesResult`] so that callers always see an error
//! estimate and the work performed; failures are typed through [`EvalError`].
//!
//! The environment variable `LIFSH_MAX_TERMS` caps series summation lengths
//! (default one million terms), read once per process.

pub mod appell;
pub mod cxexp;
mod error;
pub mod feynman;
pub mod gamma;
pub mod oracle;
pub mod quad;
pub mod series;
pub mod verify;

/// Complex double-precision scalar used throughout the crate.
pub use num_complex::Complex64;

pub use cxexp::CartesianArg;
pub use error::EvalError;
pub use feynman::{IntegralPoint, MassPair};
pub use quad::QuadratureSpec;
pub use series::SeriesResult;
pub use verify::VerifyReport;
