//! Numerical laboratory for a catalog of sharp elementary inequalities:
//! two-parameter mean families and their orderings, logarithm and
//! exponential bounds with sharpness probes, continued-fraction
//! convergents of ln(1+x), series remainder enclosures built from
//! antiderivatives, a seeded certification engine for inequality
//! families, Young-type comparisons, and complex-plane region scans.
//!
//! Everything is deterministic: random sampling goes through a counter
//! RNG keyed by (seed, index), so certificates are reproducible and
//! refinable without replaying state.

pub mod cert;
pub mod classic;
pub mod compensated;
pub mod complexregion;
pub mod error;
pub mod extrapolate;
pub mod logbounds;
pub mod means;
pub mod quadrature;
pub mod rng;
pub mod solve;
pub mod sums;
pub mod zeta;

pub use error::{Error, Result};
