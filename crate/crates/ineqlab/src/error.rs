use thiserror::Error;

/// Crate-wide error type.
///
/// Variants correspond to the contract failures the public operations can
/// report; the payload carries enough context to diagnose the call site
/// without a debugger.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural parameter (exponent, weight vector, index) is invalid.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A quasi-arithmetic generator failed its monotonicity check.
    #[error("generator error: {0}")]
    Generator(String),

    /// Root bracketing failed: f(lo) and f(hi) have the same sign.
    #[error("no bracket: f({lo}) = {flo} and f({hi}) = {fhi} have the same sign")]
    NoBracket { lo: f64, hi: f64, flo: f64, fhi: f64 },

    /// Iteration exhausted its budget without meeting the tolerance.
    #[error("no convergence after {iterations} iterations (last residual {residual})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A fixed-point iterate escaped the divergence hull.
    #[error("divergence: iterate {value} left the hull after {iterations} iterations")]
    Divergence { value: f64, iterations: usize },

    /// Newton step undefined because the derivative vanished.
    #[error("derivative is zero at x = {at}")]
    DerivativeZero { at: f64 },

    /// The relaxation factor 1/(1 - g'(x)) is singular.
    #[error("derivative singular: g'({at}) is too close to 1")]
    DerivativeSingular { at: f64 },

    /// Requested order or count lies outside the supported range.
    #[error("range error: {0}")]
    Range(String),

    /// Paired list arguments differ in length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A model constructor rejected its defining data.
    #[error("construction error: {0}")]
    Construction(String),

    /// Extrapolation could not produce a stable estimate.
    #[error("extrapolation error: {0}")]
    Extrapolation(String),

    /// An unknown registry key was requested.
    #[error("unknown id: {0}")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
