//! Bernoulli numbers and the zeta/eta evaluation triangle.
//!
//! Bernoulli numbers follow the x/(e^x - 1) convention (B_1 = -1/2) and are
//! kept as exact rationals; floating values appear only at the API edge.
//! Even-argument zeta and eta come from the closed forms
//!
//!   zeta(2n) = 2^(2n-1) pi^(2n) |B_2n| / (2n)!
//!   eta(2n)  = (2^(2n-1) - 1) pi^(2n) |B_2n| / (2n)!
//!
//! while direct summation with an Euler-Maclaurin tail correction and the
//! alternating eta series give two independent numerical routes.  The three
//! routes are linked by eta(a) = (1 - 2^(1-a)) zeta(a), which the tests use
//! as a consistency triangle.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};

use crate::compensated::Compensated;
use crate::error::{Error, Result};

pub type Rational = Ratio<BigInt>;

/// Largest index served by the exact-rational Bernoulli table.
pub const MAX_BERNOULLI: usize = 60;

/// Exact Bernoulli numbers B_0..B_upto.
///
/// Uses the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0; the range
/// guard keeps the table within what the closed zeta forms consume.
pub fn bernoulli(upto: usize) -> Result<Vec<Rational>> {
    if upto > MAX_BERNOULLI {
        return Err(Error::Range(format!(
            "Bernoulli index {upto} exceeds the exact table bound {MAX_BERNOULLI}"
        )));
    }
    let mut b: Vec<Rational> = Vec::with_capacity(upto + 1);
    b.push(Rational::one());
    for m in 1..=upto {
        // binom accumulates C(m+1, j) incrementally.
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    Ok(b)
}

/// zeta(2n) by the closed Bernoulli form, exact range n <= 30.
pub fn zeta_even(n: usize) -> Result<f64> {
    even_form(n, false)
}

/// eta(2n) by the closed Bernoulli form, exact range n <= 30.
pub fn eta_even(n: usize) -> Result<f64> {
    even_form(n, true)
}

fn even_form(n: usize, alternating: bool) -> Result<f64> {
    if n == 0 || 2 * n > MAX_BERNOULLI {
        return Err(Error::Range(format!("zeta/eta(2n) supports 1 <= n <= {}", MAX_BERNOULLI / 2)));
    }
    let b = bernoulli(2 * n)?;
    // |B_2n| / (2n)! staged as an exact ratio before the single f64 rounding.
    let mut fact = BigInt::one();
    for k in 2..=2 * n {
        fact *= BigInt::from(k);
    }
    let ratio = b[2 * n].abs() / Rational::from_integer(fact);
    let scale = if alternating {
        2f64.powi(2 * n as i32 - 1) - 1.0
    } else {
        2f64.powi(2 * n as i32 - 1)
    };
    let ratio = ratio
        .to_f64()
        .ok_or_else(|| Error::Range(format!("Bernoulli ratio for n = {n} left f64 range")))?;
    Ok(scale * std::f64::consts::PI.powi(2 * n as i32) * ratio)
}

/// Value with an a-priori error bound.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

/// zeta(s) for s > 1 by direct summation with tail correction.
///
/// The partial sum over k <= n is corrected by the integral tail
/// n^(1-s)/(s-1) and the midpoint term -n^(-s)/2; the reported bound is
/// the magnitude of the next Euler-Maclaurin term, s n^(-s-1)/12.
pub fn zeta_direct(s: f64, terms: u64) -> Result<Estimate> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("zeta_direct needs s > 1, got {s}")));
    }
    if terms == 0 {
        return Err(Error::Parameter("term count must be positive".into()));
    }
    let mut acc = Compensated::new();
    for k in (1..=terms).rev() {
        acc.add((k as f64).powf(-s));
    }
    let n = terms as f64;
    let value = acc.value() + n.powf(1.0 - s) / (s - 1.0) - 0.5 * n.powf(-s);
    Ok(Estimate { value, error_bound: s * n.powf(-s - 1.0) / 12.0 })
}

/// eta(a) = sum (-1)^(k+1) k^(-a) by averaged partial sums.
///
/// The mean of the last two partial sums (one-step Cesaro) cancels the
/// leading alternating error, leaving O(a n^(-a-1)).
pub fn eta_direct(a: f64, terms: u64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("eta_direct needs a > 0, got {a}")));
    }
    if terms < 2 {
        return Err(Error::Parameter("need at least two terms to average".into()));
    }
    let mut acc = Compensated::new();
    let mut previous = 0.0;
    for k in 1..=terms {
        previous = acc.value();
        let term = (k as f64).powf(-a);
        acc.add(if k % 2 == 1 { term } else { -term });
    }
    Ok(0.5 * (previous + acc.value()))
}

/// eta(a) for a > 1 through the zeta route: (1 - 2^(1-a)) zeta(a).
pub fn eta_from_zeta(a: f64, terms: u64) -> Result<f64> {
    if !(a > 1.0) {
        return Err(Error::Domain(format!(
            "eta_from_zeta needs a > 1 (zeta summation); got {a}; use eta_direct below 1"
        )));
    }
    Ok((1.0 - 2f64.powf(1.0 - a)) * zeta_direct(a, terms)?.value)
}

/// zeta(a) through the eta route: eta(a) / (1 - 2^(1-a)).
///
/// Valid on 0 < a < 1 and a > 1; at a = 1 the prefactor vanishes.  This is
/// the reference route for zeta on (0, 1), where direct summation diverges.
pub fn zeta_via_eta(a: f64, terms: u64) -> Result<f64> {
    if !(a > 0.0) || (a - 1.0).abs() < 1e-12 {
        return Err(Error::Domain(format!("zeta_via_eta needs a > 0, a != 1, got {a}")));
    }
    Ok(eta_direct(a, terms)? / (1.0 - 2f64.powf(1.0 - a)))
}
