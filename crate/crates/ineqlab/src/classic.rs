//! Finite-vector Cauchy-Bunyakovsky, Minkowski and Holder checkers, the
//! two-sided Young comparison, and a few finite induction fixtures.
//!
//! Young's inequality xy <= x^p/p + y^q/q (q = p/(p-1)) admits a second
//! valid reading with p and q swapped; which of the two is the sharper
//! bound depends on where (x, y) sits relative to 1.  Both at least 1
//! favors putting p on the smaller argument; both at most 1 favors the
//! swap; when the pair straddles 1 the winner flips at the critical value
//! y_cr solving psi(y) = psi(min), psi(t) = t^p/p - t^q/q.

use crate::compensated::Compensated;
use crate::error::{Error, Result};
use crate::solve;

/// Outcome of a vector inequality check.
#[derive(Debug, Clone, Copy)]
pub struct VectorVerdict {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

fn verdict(lhs: f64, rhs: f64) -> VectorVerdict {
    VectorVerdict {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12) + 1e-300,
        equality: (lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1e-300),
    }
}

fn check_lengths(u: &[f64], v: &[f64]) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    if u.is_empty() {
        return Err(Error::Parameter("vectors must be nonempty".into()));
    }
    Ok(())
}

/// |sum u_i v_i| against the p/q norm product; the p = 2 special case is
/// the Cauchy-Bunyakovsky path, shared verbatim.
fn holder_core(u: &[f64], v: &[f64], p: f64) -> VectorVerdict {
    let q = p / (p - 1.0);
    let dot: f64 = u.iter().zip(v).map(|(&a, &b)| a * b).sum();
    let norm = |xs: &[f64], e: f64| xs.iter().map(|&a| a.abs().powf(e)).sum::<f64>().powf(1.0 / e);
    verdict(dot.abs(), norm(u, p) * norm(v, q))
}

/// |sum u_i v_i| <= sqrt(sum u_i^2) sqrt(sum v_i^2).
pub fn cauchy_bunyakovsky(u: &[f64], v: &[f64]) -> Result<VectorVerdict> {
    check_lengths(u, v)?;
    Ok(holder_core(u, v, 2.0))
}

/// sqrt(sum (u_i+v_i)^2) <= sqrt(sum u_i^2) + sqrt(sum v_i^2).
pub fn minkowski(u: &[f64], v: &[f64]) -> Result<VectorVerdict> {
    check_lengths(u, v)?;
    let sq = |xs: &[f64]| xs.iter().map(|&a| a * a).sum::<f64>().sqrt();
    let combined: f64 = u.iter().zip(v).map(|(&a, &b)| (a + b) * (a + b)).sum::<f64>().sqrt();
    Ok(verdict(combined, sq(u) + sq(v)))
}

/// |sum u_i v_i| <= (sum u_i^p)^(1/p) (sum v_i^q)^(1/q) for nonnegative
/// entries and p > 1.
pub fn holder(u: &[f64], v: &[f64], p: f64) -> Result<VectorVerdict> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Parameter(format!("Holder exponent must satisfy p > 1, got {p}")));
    }
    check_lengths(u, v)?;
    if u.iter().chain(v).any(|&a| a < 0.0) {
        return Err(Error::Domain("Holder entries must be nonnegative".into()));
    }
    Ok(holder_core(u, v, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Better {
    /// x^p/p + y^q/q is the smaller bound.
    PQ,
    /// x^q/q + y^p/p is the smaller bound.
    QP,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YoungCase {
    BothAtLeastOne,
    BothAtMostOne,
    /// min < 1 < max; carries the critical value where the winner flips.
    Straddle(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct YoungVerdict {
    pub rhs_pq: f64,
    pub rhs_qp: f64,
    pub product: f64,
    pub better: Better,
    pub case: YoungCase,
}

fn check_p(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Parameter(format!("Young exponent must satisfy p > 1, got {p}")));
    }
    Ok(p / (p - 1.0))
}

/// Critical companion of m under psi(t) = t^p/p - t^q/q: the unique
/// y >= 1 with psi(y) = psi(m).  For m >= 1 that is m itself; p = 2 makes
/// psi identically zero and the convention is y_cr = 1.
pub fn young_critical(m: f64, p: f64) -> Result<f64> {
    let q = check_p(p)?;
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("argument must be finite and nonnegative, got {m}")));
    }
    if (p - 2.0).abs() <= 1e-12 {
        return Ok(1.0);
    }
    if m >= 1.0 {
        return Ok(m);
    }
    let psi = move |t: f64| t.powf(p) / p - t.powf(q) / q;
    let dpsi = move |t: f64| t.powf(p - 1.0) - t.powf(q - 1.0);
    let target = psi(m);
    let g = move |t: f64| psi(t) - target;
    // psi is strictly monotone on [1, inf) with psi(1) on the opposite
    // side of psi(m), so doubling the right end must produce a bracket
    let mut hi = 10.0f64;
    let sign_lo = g(1.0).signum();
    let mut guard = 0;
    while g(hi).signum() == sign_lo {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::NoBracket { lo: 1.0, hi, flo: g(1.0), fhi: g(hi) });
        }
    }
    let refined = match solve::newton(g, dpsi, 0.5 * (1.0 + hi), 1e-12, 60) {
        Ok(trace) if (1.0..=hi).contains(&trace.root) => trace.root,
        _ => solve::bisect(g, 1.0, hi, 1e-13)?.root,
    };
    Ok(refined)
}

/// Evaluate both Young bounds at (x, y) and classify which is sharper.
pub fn young_compare(x: f64, y: f64, p: f64) -> Result<YoungVerdict> {
    let q = check_p(p)?;
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("Young arguments must be finite and nonnegative, got ({x}, {y})")));
    }
    let rhs_pq = x.powf(p) / p + y.powf(q) / q;
    let rhs_qp = x.powf(q) / q + y.powf(p) / p;
    let case = if x >= 1.0 && y >= 1.0 {
        YoungCase::BothAtLeastOne
    } else if x <= 1.0 && y <= 1.0 {
        YoungCase::BothAtMostOne
    } else {
        YoungCase::Straddle(young_critical(x.min(y), p)?)
    };
    let scale = rhs_pq.abs().max(rhs_qp.abs()).max(1e-300);
    let better = if (rhs_pq - rhs_qp).abs() <= 1e-12 * scale {
        Better::Tie
    } else if rhs_pq < rhs_qp {
        Better::PQ
    } else {
        Better::QP
    };
    Ok(YoungVerdict { rhs_pq, rhs_qp, product: x * y, better, case })
}

/// Finite inequality sweeps classically proved by induction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InductionFixture {
    /// n! < (n/2)^n, claimed from n = 6 (compared in log space).
    FactorialHalfPower,
    /// sum_{k<=n} 1/k^2 <= 2 - 1/n.
    ReciprocalSquares,
    /// prod_{k<=n} (2k-1)/(2k) <= 1/sqrt(3n+1), equality at n = 1.
    OddEvenProduct,
}

impl InductionFixture {
    pub const ALL: [InductionFixture; 3] =
        [Self::FactorialHalfPower, Self::ReciprocalSquares, Self::OddEvenProduct];

    pub fn id(&self) -> &'static str {
        match self {
            Self::FactorialHalfPower => "factorial_half_power",
            Self::ReciprocalSquares => "reciprocal_squares",
            Self::OddEvenProduct => "odd_even_product",
        }
    }

    /// Smallest n for which the claim is stated.
    pub fn min_n(&self) -> u64 {
        match self {
            Self::FactorialHalfPower => 6,
            _ => 1,
        }
    }

    /// (lhs, rhs, holds) at n; factorials go through log accumulation so
    /// nothing overflows.
    pub fn check(&self, n: u64) -> Result<(f64, f64, bool)> {
        if n == 0 {
            return Err(Error::Range("induction fixtures start at n = 1".into()));
        }
        let nf = n as f64;
        Ok(match self {
            Self::FactorialHalfPower => {
                let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
                let rhs = nf * (nf / 2.0).ln();
                (ln_fact, rhs, ln_fact < rhs)
            }
            Self::ReciprocalSquares => {
                let mut acc = Compensated::new();
                for k in (1..=n).rev() {
                    let kf = k as f64;
                    acc.add(1.0 / (kf * kf));
                }
                let (lhs, rhs) = (acc.value(), 2.0 - 1.0 / nf);
                (lhs, rhs, lhs <= rhs * (1.0 + 1e-12))
            }
            Self::OddEvenProduct => {
                let mut prod = 1.0f64;
                for k in 1..=n {
                    prod *= (2 * k - 1) as f64 / (2 * k) as f64;
                }
                let rhs = 1.0 / (3.0 * nf + 1.0).sqrt();
                (prod, rhs, prod <= rhs * (1.0 + 1e-12))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_bunyakovsky_cases() {
        let v = cauchy_bunyakovsky(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!((v.lhs, v.rhs), (0.0, 1.0));
        assert!(v.holds && !v.equality);
        // proportional vectors hit equality
        let v = cauchy_bunyakovsky(&[1.0, 2.0], &[2.0, 4.0]).unwrap();
        assert!(v.holds && v.equality);
        let v = cauchy_bunyakovsky(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(v.lhs, 11.0);
        assert_eq!(v.rhs, 14.0);
        assert!(cauchy_bunyakovsky(&[1.0], &[1.0, 2.0]).is_err());
        assert!(cauchy_bunyakovsky(&[], &[]).is_err());
        // sign-mixing vectors still bounded
        let v = cauchy_bunyakovsky(&[1.0, -2.0, 3.0], &[-3.0, 1.0, 2.0]).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn minkowski_cases() {
        let v = minkowski(&[3.0, 0.0], &[0.0, 4.0]).unwrap();
        assert_eq!((v.lhs, v.rhs), (5.0, 7.0));
        assert!(v.holds);
        let v = minkowski(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(v.equality);
        assert!(minkowski(&[1.0], &[]).is_err());
    }

    #[test]
    fn holder_cases() {
        // p = 2 goes through the same code path as Cauchy-Bunyakovsky
        let u = [0.3, 1.7, 2.2];
        let v = [1.1, 0.2, 0.9];
        let h = holder(&u, &v, 2.0).unwrap();
        let cb = cauchy_bunyakovsky(&u, &v).unwrap();
        assert_eq!(h.lhs.to_bits(), cb.lhs.to_bits());
        assert_eq!(h.rhs.to_bits(), cb.rhs.to_bits());

        let h = holder(&[1.0, 1.0], &[1.0, 1.0], 3.0).unwrap();
        assert_eq!(h.lhs, 2.0);
        assert!((h.rhs - 2.0).abs() < 1e-12 && h.equality);

        let h = holder(&[2.0, 0.0], &[0.0, 5.0], 4.0).unwrap();
        assert_eq!(h.lhs, 0.0);
        assert!(h.lhs < h.rhs);

        assert!(holder(&[1.0], &[1.0], 1.0).is_err());
        assert!(holder(&[-1.0], &[1.0], 2.0).is_err());
    }

    #[test]
    fn young_printed_examples() {
        // tolerance: one unit in the fifth significant digit (the source
        // values are truncated prints)
        let close5 = |got: f64, want: f64| {
            let unit = 10f64.powf(want.abs().log10().floor() - 4.0);
            assert!((got - want).abs() <= unit, "{got} vs {want}");
        };
        let v = young_compare(5.0, 130.0, 4.0).unwrap();
        close5(v.rhs_pq, 650.16502);
        close5(v.rhs_qp, 71402508.0);
        assert_eq!(v.better, Better::PQ);
        assert_eq!(v.case, YoungCase::BothAtLeastOne);

        let v = young_compare(0.2, 0.5, 4.0).unwrap();
        close5(v.rhs_pq, 0.29803);
        close5(v.rhs_qp, 0.10334);
        assert_eq!(v.better, Better::QP);
        assert_eq!(v.case, YoungCase::BothAtMostOne);

        let v = young_compare(0.5, 1.3, 4.0).unwrap();
        close5(v.rhs_pq, 1.07973);
        close5(v.rhs_qp, 1.01166);
        assert_eq!(v.better, Better::QP);
        let YoungCase::Straddle(y_cr) = v.case else { panic!("expected straddle") };
        assert!((y_cr - 1.35485).abs() < 1e-4);

        let v = young_compare(0.5, 1.4, 4.0).unwrap();
        close5(v.rhs_pq, 1.19025);
        close5(v.rhs_qp, 1.25804);
        assert_eq!(v.better, Better::PQ);

        let v = young_compare(1.0, 1.0, 3.7).unwrap();
        assert_eq!(v.better, Better::Tie);
        assert!((v.rhs_pq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn young_bounds_always_valid() {
        let v = young_compare(0.5, 1.3, 4.0).unwrap();
        assert!(v.product <= v.rhs_pq && v.product <= v.rhs_qp);
        assert!(young_compare(-1.0, 2.0, 4.0).is_err());
        assert!(young_compare(1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn critical_value_properties() {
        let y_cr = young_critical(0.5, 4.0).unwrap();
        assert!((y_cr - 1.3548510889460397).abs() < 1e-10);
        // defining equation residual
        let p = 4.0;
        let q = p / (p - 1.0);
        let psi = |t: f64| t.powf(p) / p - t.powf(q) / q;
        assert!((psi(y_cr) - psi(0.5)).abs() < 1e-10);
        // winner flips across y_cr
        assert_eq!(young_compare(0.5, y_cr - 1e-6, p).unwrap().better, Better::QP);
        assert_eq!(young_compare(0.5, y_cr + 1e-6, p).unwrap().better, Better::PQ);
        // p < 2 mirrors the p > 2 case through the q swap
        let y_cr_dual = young_critical(0.5, q).unwrap();
        assert!((y_cr_dual - y_cr).abs() < 1e-9);
        assert_eq!(young_critical(1.7, 4.0).unwrap(), 1.7);
        assert_eq!(young_critical(0.3, 2.0).unwrap(), 1.0);
        assert!(young_critical(-0.1, 4.0).is_err());
    }

    #[test]
    fn induction_fixtures_hold_on_their_ranges() {
        for n in 6..=30 {
            let (lhs, rhs, holds) = InductionFixture::FactorialHalfPower.check(n).unwrap();
            assert!(holds, "n={n}: ln n! = {lhs} vs {rhs}");
        }
        // the claim genuinely starts at 6
        assert!(!InductionFixture::FactorialHalfPower.check(5).unwrap().2);
        for n in [1, 2, 17, 10_000] {
            assert!(InductionFixture::ReciprocalSquares.check(n).unwrap().2, "n={n}");
        }
        for n in [1, 2, 31, 1_000] {
            assert!(InductionFixture::OddEvenProduct.check(n).unwrap().2, "n={n}");
        }
        // equality case of the product bound
        let (lhs, rhs, _) = InductionFixture::OddEvenProduct.check(1).unwrap();
        assert_eq!(lhs, rhs);
        assert!(InductionFixture::ReciprocalSquares.check(0).is_err());
    }
}
