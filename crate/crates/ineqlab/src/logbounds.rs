//! The logarithm and e bound catalog: two-sided elementary bounds on
//! ln(1+x), the deviation functions that measure their slack, and the
//! continued-fraction convergents of ln(1+x).
//!
//! Every family is stated for the stable primitives ln_1p / exp, because
//! each deviation function is a catastrophic cancellation near 0
//! otherwise.  Family ids (eq05, zd57_c1, ...) are catalog keys used by
//! the command-line interface; the `formula` field carries the actual
//! statement.

use crate::cert::{BoundFamily, Interval};
use crate::compensated::Compensated;
use crate::error::{Error, Result};
use crate::solve;
use num::bigint::BigInt;
use num::traits::ToPrimitive;

/// (1 + 1/x)^e evaluated stably for large x.
fn pow_one_plus_inv(x: f64, e: f64) -> f64 {
    (e * (1.0 / x).ln_1p()).exp()
}

/// ln(1+1/x), stable for large x.
fn ln_inv(x: f64) -> f64 {
    (1.0 / x).ln_1p()
}

/// Full catalog of certified scalar bound families.
///
/// Sampling domains are finite windows of each family's stated domain;
/// open endpoints mark excluded equality points (samplers stay interior
/// regardless).
pub fn bound_registry() -> Vec<BoundFamily> {
    let e = std::f64::consts::E;
    let mut reg = vec![
        BoundFamily::scalar(
            "eq05",
            "ln(1+x) <= x on x > 0, equality only at x = 0",
            true,
            Interval { lo: 0.0, hi: 100.0, open_lo: true, open_hi: false },
            |x| x.ln_1p(),
            |x| x,
        ),
        BoundFamily::scalar(
            "eq06",
            "x/(x+1) <= ln(1+x) on x > 0",
            true,
            Interval { lo: 0.0, hi: 100.0, open_lo: true, open_hi: false },
            |x| x / (x + 1.0),
            |x| x.ln_1p(),
        ),
        BoundFamily::scalar(
            "eq07",
            "ln^2(1+1/x) < 1/(x(x+1)) on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| ln_inv(x).powi(2),
            |x| 1.0 / (x * (x + 1.0)),
        ),
        BoundFamily::scalar(
            "eq08_lower",
            "-1 <= x ln^2(1+1/x) - 1/(x+1) on x > 0",
            false,
            Interval::open(0.0, 1e3),
            |_| -1.0,
            |x| x * ln_inv(x).powi(2) - 1.0 / (x + 1.0),
        ),
        BoundFamily::scalar(
            "eq08_upper",
            "x ln^2(1+1/x) - 1/(x+1) < 0 on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| x * ln_inv(x).powi(2) - 1.0 / (x + 1.0),
            |_| 0.0,
        ),
        BoundFamily::scalar(
            "eq081",
            "ln(1+y) <= y/sqrt(1+y) on y > 0",
            true,
            Interval::open(0.0, 100.0),
            |y| y.ln_1p(),
            |y| y / (1.0 + y).sqrt(),
        ),
        BoundFamily::scalar(
            "eq10",
            "2x/(x+2) < ln(1+x) on x > 0",
            true,
            Interval::open(0.0, 100.0),
            |x| 2.0 * x / (x + 2.0),
            |x| x.ln_1p(),
        ),
        BoundFamily::scalar(
            "eq12_lower",
            "x - x^2/2 < ln(1+x) on x > 0",
            true,
            Interval::open(0.0, 100.0),
            |x| x - 0.5 * x * x,
            |x| x.ln_1p(),
        ),
        BoundFamily::scalar(
            "eq12_upper",
            "ln(1+x) < x - x^2/2 + x^3/3 on x > 0",
            true,
            Interval::open(0.0, 100.0),
            |x| x.ln_1p(),
            |x| x - 0.5 * x * x + x * x * x / 3.0,
        ),
        BoundFamily::scalar(
            "eq13",
            "ln(1+x) <= x(x+2)/(2(x+1)) on x > 0, equality only at x = 0",
            true,
            Interval { lo: 0.0, hi: 100.0, open_lo: true, open_hi: false },
            |x| x.ln_1p(),
            |x| x * (x + 2.0) / (2.0 * (x + 1.0)),
        ),
        BoundFamily::scalar(
            "eq20_lower",
            "1/(y+1) < ln(1+1/y) on y > 0",
            true,
            Interval::open(0.0, 1e3),
            |y| 1.0 / (y + 1.0),
            ln_inv,
        ),
        BoundFamily::scalar(
            "eq20_upper",
            "ln(1+1/y) < 1/y on y > 0",
            true,
            Interval::open(0.0, 1e3),
            ln_inv,
            |y| 1.0 / y,
        ),
        BoundFamily::scalar(
            "eq28",
            "1/sqrt((x+1)(x+2)) < ln(1+1/x) on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| 1.0 / ((x + 1.0) * (x + 2.0)).sqrt(),
            ln_inv,
        ),
        BoundFamily::scalar(
            "eq35_lower",
            "(1+1/x)^x < e on x > 0",
            true,
            Interval::open(0.0, 1e6),
            |x| pow_one_plus_inv(x, x),
            move |_| e,
        ),
        BoundFamily::scalar(
            "eq35_upper",
            "e < (1+1/x)^(x+1) on x > 0",
            true,
            Interval::open(0.0, 1e6),
            move |_| e,
            |x| pow_one_plus_inv(x, x + 1.0),
        ),
        BoundFamily::scalar(
            "eq37",
            "e < (1+1/x)^(x+1/2) on x > 0",
            true,
            Interval::open(0.0, 1e6),
            move |_| e,
            |x| pow_one_plus_inv(x, x + 0.5),
        ),
        BoundFamily::scalar(
            "eq38",
            "1/(x+1/2) < ln(1+1/x) on x > 0",
            true,
            Interval::open(0.0, 1e6),
            |x| 1.0 / (x + 0.5),
            ln_inv,
        ),
        BoundFamily::scalar(
            "zd61_lower",
            "exp(1/(2x) - 1/(3x^2)) < e (1+1/x)^(-x) on x >= 1",
            true,
            Interval { lo: 1.0, hi: 1e6, open_lo: false, open_hi: false },
            |x| (0.5 / x - 1.0 / (3.0 * x * x)).exp(),
            |x| (1.0 - x * ln_inv(x)).exp(),
        ),
        BoundFamily::scalar(
            "zd61_upper",
            "e (1+1/x)^(-x) < exp(1/(2x)) on x >= 1",
            true,
            Interval { lo: 1.0, hi: 1e6, open_lo: false, open_hi: false },
            |x| (1.0 - x * ln_inv(x)).exp(),
            |x| (0.5 / x).exp(),
        ),
        BoundFamily::scalar(
            "zd63b",
            "x(x+1) ln^2(1+1/x) < 1 on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| x * (x + 1.0) * ln_inv(x).powi(2),
            |_| 1.0,
        ),
        BoundFamily::scalar(
            "zd64_cubic",
            "ln^3(1+1/x) < 1/(x(x+1)(x+1/2)) on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| ln_inv(x).powi(3),
            |x| 1.0 / (x * (x + 1.0) * (x + 0.5)),
        ),
        BoundFamily::scalar(
            "zd64_quartic",
            "ln^4(1+1/x) < 1/(x(x+1)(x+1/2)(x+0.35)) on x > 0",
            true,
            Interval::open(0.0, 1e3),
            |x| ln_inv(x).powi(4),
            |x| 1.0 / (x * (x + 1.0) * (x + 0.5) * (x + 0.35)),
        ),
    ];
    for (k, (c, lo)) in [(0.2, 1.0), (0.4, 2.0), (21.0 / 47.0, 3.0)].iter().enumerate() {
        let (c, lo) = (*c, *lo);
        reg.push(BoundFamily::scalar(
            format!("zd57_c{}", k + 1),
            format!("(1+1/x)^(x+{c}) < e on x >= {lo}"),
            true,
            Interval { lo, hi: 1e6, open_lo: false, open_hi: false },
            move |x| pow_one_plus_inv(x, x + c),
            move |_| e,
        ));
    }
    for n in 2..=8u32 {
        reg.push(BoundFamily::scalar(
            format!("zd64_n{n}"),
            format!("ln^{n}(1+1/x) < 1/((x + {n}/2) x^{}) on x > 0", n - 1),
            true,
            Interval::open(0.0, 1e3),
            move |x| ln_inv(x).powi(n as i32),
            move |x| 1.0 / ((x + n as f64 / 2.0) * x.powi(n as i32 - 1)),
        ));
    }
    reg
}

/// Rebuild and look up a single family by catalog id.
pub fn family_by_id(id: &str) -> Result<BoundFamily> {
    bound_registry()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownId(format!("bound family {id}")))
}

/// Knobbed variants of the families whose constants the catalog claims
/// sharp; feeding these to the sharpness probe brackets the constant.
pub fn sharpness_knob(id: &str) -> Result<Box<dyn Fn(f64) -> BoundFamily + Send + Sync>> {
    match id {
        // delta = 1 is eq081 (since 1+y = y+1); any larger delta fails near 0
        "eq09" => Ok(Box::new(|delta| {
            BoundFamily::scalar(
                format!("eq09[delta={delta}]"),
                "ln(1+y) <= y/sqrt(y+delta)",
                false,
                Interval::open(0.0, 100.0),
                |y| y.ln_1p(),
                move |y| y / (y + delta).sqrt(),
            )
        })),
        "eq10" => Ok(Box::new(|delta| {
            BoundFamily::scalar(
                format!("eq10[delta={delta}]"),
                "2x/(x+delta) <= ln(1+x)",
                false,
                Interval::open(0.0, 100.0),
                move |x| 2.0 * x / (x + delta),
                |x| x.ln_1p(),
            )
        })),
        "eq13" => Ok(Box::new(|delta| {
            BoundFamily::scalar(
                format!("eq13[delta={delta}]"),
                "ln(1+x) <= x(x+delta)/(2(x+1))",
                false,
                Interval::open(0.0, 100.0),
                |x| x.ln_1p(),
                move |x| x * (x + delta) / (2.0 * (x + 1.0)),
            )
        })),
        other => Err(Error::UnknownId(format!("sharpness knob {other}"))),
    }
}

/// Ordered bound chains; each evaluation returns labeled values that must
/// appear in non-decreasing order on the chain's domain.
pub fn eval_chain(chain_id: &str, x: f64) -> Result<Vec<(&'static str, f64)>> {
    let positive = |x: f64| {
        if x > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("chain needs x > 0, got {x}")))
        }
    };
    let nonneg = |x: f64| {
        if x >= 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("chain needs x >= 0, got {x}")))
        }
    };
    match chain_id {
        "eq14" => {
            nonneg(x)?;
            Ok(vec![
                ("ln(1+x)", x.ln_1p()),
                ("x/sqrt(1+x)", x / (1.0 + x).sqrt()),
                ("x(x+2)/(2(x+1))", x * (x + 2.0) / (2.0 * (x + 1.0))),
                ("x", x),
            ])
        }
        "eq15" => {
            nonneg(x)?;
            Ok(vec![
                ("x/(x+1)", x / (x + 1.0)),
                ("2x/(x+2)", 2.0 * x / (x + 2.0)),
                ("ln(1+x)", x.ln_1p()),
            ])
        }
        "eq17" => {
            positive(x)?;
            Ok(vec![
                ("ln(1+1/y)", ln_inv(x)),
                ("1/sqrt(y(y+1))", 1.0 / (x * (x + 1.0)).sqrt()),
                ("(2y+1)/(2y(y+1))", (2.0 * x + 1.0) / (2.0 * x * (x + 1.0))),
                ("1/y", 1.0 / x),
            ])
        }
        // stated with the middle terms transposed in the source catalog;
        // the true order is 1/(y+1) < 1/(y+1/2) < ln(1+1/y)
        "eq18" => {
            positive(x)?;
            Ok(vec![
                ("1/(y+1)", 1.0 / (x + 1.0)),
                ("1/(y+1/2)", 1.0 / (x + 0.5)),
                ("ln(1+1/y)", ln_inv(x)),
            ])
        }
        "eq19" => {
            positive(x)?;
            Ok(vec![
                ("1/y - 1/(2y^2)", 1.0 / x - 0.5 / (x * x)),
                ("ln(1+1/y)", ln_inv(x)),
                ("1/y - 1/(2y^2) + 1/(3y^3)", 1.0 / x - 0.5 / (x * x) + 1.0 / (3.0 * x * x * x)),
            ])
        }
        "eq20" => {
            positive(x)?;
            Ok(vec![
                ("1/(y+1)", 1.0 / (x + 1.0)),
                ("ln(1+1/y)", ln_inv(x)),
                ("1/y", 1.0 / x),
            ])
        }
        other => Err(Error::UnknownId(format!("chain {other}"))),
    }
}

pub const EPS_FAMILIES: [&str; 5] = ["log_sqrt", "pade2", "e_exponent", "sqrt_pair", "mid_pair"];

/// Deviation functions measuring the slack of the catalog bounds.
///
/// log_sqrt and pade2 and e_exponent have closed forms; sqrt_pair and
/// mid_pair are defined implicitly and solved by bracketed root finding
/// (brackets supplied by the chain 1/((x+1)(x+2)) < ln^2(1+1/x) <
/// 1/(x(x+1)) and by eq38), to 1e-12.
pub fn eps_eval(family: &str, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("deviation functions need x > 0, got {x}")));
    }
    match family {
        // y^2/ln^2(1+y) - y: how far 1+y lags inside the eq081 square
        "log_sqrt" => {
            let l = x.ln_1p();
            Ok(x * x / (l * l) - x)
        }
        // 2x/ln(1+x) - x: the exact denominator shift making eq10 an equality
        "pade2" => Ok(2.0 * x / x.ln_1p() - x),
        // 1/ln(1+1/x) - x: the exact exponent shift making eq35 an equality
        "e_exponent" => Ok(1.0 / ln_inv(x) - x),
        // root of ln^2(1+1/x) = 1/((x+1)(x+eps)), bracketed by (0, 2)
        "sqrt_pair" => {
            let l2 = ln_inv(x).powi(2);
            solve::bisect_then_secant(|e| l2 - 1.0 / ((x + 1.0) * (x + e)), 0.0, 2.0, 1e-13)
        }
        // nonnegative root of ln(1+1/x) = (x+1/2)/((x+1/2)^2 - eps^2),
        // bracketed by [0, x+1/2)
        "mid_pair" => {
            let l = ln_inv(x);
            let half = x + 0.5;
            let g = move |e: f64| l - half / (half * half - e * e);
            solve::bisect_then_secant(g, 0.0, half * (1.0 - 1e-12), 1e-13)
        }
        other => Err(Error::UnknownId(format!("deviation family {other}"))),
    }
}

/// Taylor truncation bound eps_n(x) = 1/(sum_{j=1..n} (-1)^(j-1)/(j x^j)) - x.
///
/// For x >= 1 the alternating tail gives the enclosure
/// eps_{2n-1}(x) <= eps_eval(e_exponent, x) <= eps_{2n}(x).
pub fn eps_taylor_bound(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("truncation order must be >= 1".into()));
    }
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("the alternating enclosure needs x >= 1, got {x}")));
    }
    let mut acc = Compensated::new();
    for j in (1..=n).rev() {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign / (j as f64 * x.powi(j as i32)));
    }
    Ok(1.0 / acc.value() - x)
}

/// Largest convergent index with exact integer coefficients kept sane.
pub const MAX_CONVERGENT: u32 = 60;

/// Convergent R_n = P_n/Q_n of the continued fraction of ln(1+x), with
/// exact integer polynomial coefficients (ascending order).
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent {
    pub n: u32,
    pub p_coeffs: Vec<BigInt>,
    pub q_coeffs: Vec<BigInt>,
}

fn poly_scale(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    p.iter().map(|a| a * c).collect()
}

/// c * x * p
fn poly_shift_scale(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0)];
    out.extend(p.iter().map(|a| a * c));
    out
}

fn poly_add(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (l, s) in long.iter_mut().zip(short) {
        *l += s;
    }
    while long.len() > 1 && long.last() == Some(&BigInt::from(0)) {
        long.pop();
    }
    long
}

fn poly_eval(p: &[BigInt], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::INFINITY))
}

/// Build R_n by the three-term recurrence P_k = b_k P_{k-1} + a_k P_{k-2}
/// with b_k = k, a_1 = x and a_{2m} = a_{2m+1} = m^2 x.
pub fn cf_convergent(n: u32) -> Result<Convergent> {
    if n == 0 || n > MAX_CONVERGENT {
        return Err(Error::Range(format!("convergent index must be in 1..={MAX_CONVERGENT}")));
    }
    // (P_{-1}, P_0) = (1, 0); (Q_{-1}, Q_0) = (0, 1)
    let mut p_prev = vec![BigInt::from(1)];
    let mut p_cur = vec![BigInt::from(0)];
    let mut q_prev = vec![BigInt::from(0)];
    let mut q_cur = vec![BigInt::from(1)];
    for k in 1..=n {
        let b = BigInt::from(k);
        let m = BigInt::from((k / 2).max(1).pow(2));
        let p_next = poly_add(poly_scale(&p_cur, &b), poly_shift_scale(&p_prev, &m));
        let q_next = poly_add(poly_scale(&q_cur, &b), poly_shift_scale(&q_prev, &m));
        (p_prev, p_cur) = (p_cur, p_next);
        (q_prev, q_cur) = (q_cur, q_next);
    }
    Ok(Convergent { n, p_coeffs: p_cur, q_coeffs: q_cur })
}

impl Convergent {
    /// P_n(x)/Q_n(x) via Horner on the exact coefficients.
    pub fn eval(&self, x: f64) -> f64 {
        poly_eval(&self.p_coeffs, x) / poly_eval(&self.q_coeffs, x)
    }

    pub fn degree_p(&self) -> usize {
        self.p_coeffs.len() - 1
    }

    pub fn degree_q(&self) -> usize {
        self.q_coeffs.len() - 1
    }
}

/// R_n(x) by bottom-up evaluation of the truncated fraction; independent
/// of the polynomial route, which it cross-checks.
pub fn cf_eval(n: u32, x: f64) -> Result<f64> {
    if n == 0 || n > MAX_CONVERGENT {
        return Err(Error::Range(format!("convergent index must be in 1..={MAX_CONVERGENT}")));
    }
    if !(x > -1.0) {
        return Err(Error::Domain(format!("convergents are evaluated for x > -1, got {x}")));
    }
    let mut acc = 0.0;
    for k in (1..=n).rev() {
        let a = if k == 1 { x } else { ((k / 2) as f64).powi(2) * x };
        acc = a / (k as f64 + acc);
    }
    Ok(acc)
}

/// Sum of x^k/sqrt(k!) by compensated summation, stopping when the term
/// drops below tol * |partial sum|.
///
/// For sizable negative x the true value is exponentially smaller than
/// the largest term, so the returned double carries an absolute error of
/// order eps * max_k |x|^k/sqrt(k!); positivity is only numerically
/// resolvable while that noise stays below the value (roughly x >= -5).
pub fn sqrt_factorial_series(x: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    if !x.is_finite() {
        return Err(Error::Domain("series argument must be finite".into()));
    }
    let mut acc = Compensated::new();
    acc.add(1.0);
    let mut term = 1.0f64;
    for k in 1..=2_000u32 {
        // term_k = term_{k-1} * x / sqrt(k)
        term *= x / (k as f64).sqrt();
        acc.add(term);
        if term.abs() < tol * acc.value().abs().max(f64::MIN_POSITIVE) && k > 4 {
            break;
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{self, Strategy, Support};
    use std::f64::consts::LN_2;

    #[test]
    fn registry_is_populated_and_holds() {
        let reg = bound_registry();
        assert!(reg.len() >= 20, "only {} families", reg.len());
        let mut ids: Vec<&str> = reg.iter().map(|f| f.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len(), "duplicate family ids");
        for f in &reg {
            assert!(!f.formula.is_empty(), "{} lacks a statement", f.id);
            let cert = cert::certify(f, 3_000, 42, Strategy::LogUniform).unwrap();
            assert!(cert.holds, "{} violated: worst gap {}", f.id, cert.worst_gap);
        }
    }

    #[test]
    fn equality_points_at_zero() {
        for id in ["eq05", "eq13"] {
            let fam = family_by_id(id).unwrap();
            if let Support::Scalar { lhs, rhs, .. } = &fam.support {
                assert_eq!(lhs(0.0), 0.0, "{id}");
                assert_eq!(rhs(0.0), 0.0, "{id}");
            } else {
                panic!("{id} should be scalar");
            }
        }
        assert!(family_by_id("eq99").is_err());
    }

    #[test]
    fn chains_are_ordered() {
        let vals = eval_chain("eq14", 1.0).unwrap();
        let expected = [LN_2, 1.0 / 2f64.sqrt(), 0.75, 1.0];
        for ((_, v), e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
        for w in vals.windows(2) {
            assert!(w[0].1 < w[1].1);
        }
        for (_, v) in eval_chain("eq14", 0.0).unwrap() {
            assert_eq!(v, 0.0);
        }
        let vals = eval_chain("eq20", 1.0).unwrap();
        assert_eq!(vals[0].1, 0.5);
        assert!((vals[1].1 - LN_2).abs() < 1e-15);
        assert_eq!(vals[2].1, 1.0);
        // corrected middle-term order, strict for x > 0
        for x in [0.1, 1.0, 2.0, 50.0] {
            for id in ["eq15", "eq17", "eq18", "eq19", "eq20"] {
                let vals = eval_chain(id, x).unwrap();
                for w in vals.windows(2) {
                    assert!(w[0].1 < w[1].1, "{id} at {x}: {vals:?}");
                }
            }
        }
        assert!(eval_chain("eq17", 0.0).is_err());
        assert!(eval_chain("eq14", -0.5).is_err());
        assert!(eval_chain("nope", 1.0).is_err());
    }

    #[test]
    fn eps_closed_forms() {
        assert!((eps_eval("log_sqrt", 1e-8).unwrap() - 1.0).abs() < 1e-6);
        assert!((eps_eval("pade2", 1.0).unwrap() - (2.0 / LN_2 - 1.0)).abs() < 1e-12);
        assert!((eps_eval("e_exponent", 1e6).unwrap() - 0.5).abs() < 1e-6);
        assert!((eps_eval("e_exponent", 1.0).unwrap() - (1.0 / LN_2 - 1.0)).abs() < 1e-12);
        // the small-x limit of the exponent deviation is 0, but the decay
        // is only logarithmic: at 1e-8 it is still above 0.05
        assert!((eps_eval("e_exponent", 1e-8).unwrap() - 0.0542868).abs() < 1e-6);
        assert!(eps_eval("log_sqrt", 0.0).is_err());
        assert!(eps_eval("nope", 1.0).is_err());
    }

    #[test]
    fn eps_monotonicity_and_range() {
        let grid: Vec<f64> = (1..=400).map(|i| i as f64 * 0.05).collect();
        let mut prev_ls = f64::NEG_INFINITY;
        let mut prev_p2 = f64::INFINITY;
        for &x in &grid {
            let ls = eps_eval("log_sqrt", x).unwrap();
            let p2 = eps_eval("pade2", x).unwrap();
            let ee = eps_eval("e_exponent", x).unwrap();
            assert!(ls > prev_ls, "log_sqrt not increasing at {x}");
            assert!(p2 < prev_p2, "pade2 not decreasing at {x}");
            assert!(ee > 0.0 && ee < 0.5, "e_exponent out of (0, 1/2) at {x}: {ee}");
            prev_ls = ls;
            prev_p2 = p2;
        }
    }

    #[test]
    fn implicit_eps_match_their_closed_forms() {
        for x in [0.1, 1.0, 10.0, 1000.0] {
            let l = (1.0f64 / x).ln_1p();
            let sp = eps_eval("sqrt_pair", x).unwrap();
            let closed = 1.0 / ((x + 1.0) * l * l) - x;
            assert!((sp - closed).abs() < 1e-10, "sqrt_pair at {x}: {sp} vs {closed}");
            assert!(sp > 0.0 && sp < 2.0);

            let mp = eps_eval("mid_pair", x).unwrap();
            let half = x + 0.5;
            let closed = (half * half - half / l).sqrt();
            assert!((mp - closed).abs() < 1e-10, "mid_pair at {x}: {mp} vs {closed}");
            assert!(mp < half);
        }
        // large-x limit of mid_pair is 1/sqrt(12); past x ~ 1e3 the
        // defining equation cancels x^2-sized terms and the root drowns
        // in rounding, so the limit is probed at the largest still-clean x
        let lim = eps_eval("mid_pair", 1e3).unwrap();
        assert!((lim - 1.0 / 12f64.sqrt()).abs() < 1e-4, "{lim}");
    }

    #[test]
    fn taylor_bounds_enclose_the_exponent_deviation() {
        assert_eq!(eps_taylor_bound(1, 5.0).unwrap(), 0.0);
        assert!((eps_taylor_bound(2, 1.0).unwrap() - 1.0).abs() < 1e-14);
        // eps_2(x) = x/(2x-1)
        assert!((eps_taylor_bound(2, 3.0).unwrap() - 0.6).abs() < 1e-14);
        for x in [1.0, 2.0, 7.5, 100.0] {
            let eps = eps_eval("e_exponent", x).unwrap();
            for n in 1..=4u32 {
                let lo = eps_taylor_bound(2 * n - 1, x).unwrap();
                let hi = eps_taylor_bound(2 * n, x).unwrap();
                assert!(lo <= eps + 1e-12 && eps <= hi + 1e-12, "n={n} x={x}: {lo} {eps} {hi}");
            }
        }
        assert!(eps_taylor_bound(0, 2.0).is_err());
        assert!(eps_taylor_bound(2, 0.5).is_err());
    }

    #[test]
    fn convergent_coefficients_exact_for_small_n() {
        let big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        let r1 = cf_convergent(1).unwrap();
        assert_eq!(r1.p_coeffs, big(&[0, 1]));
        assert_eq!(r1.q_coeffs, big(&[1]));
        let r2 = cf_convergent(2).unwrap();
        assert_eq!(r2.p_coeffs, big(&[0, 2]));
        assert_eq!(r2.q_coeffs, big(&[2, 1]));
        let r3 = cf_convergent(3).unwrap();
        assert_eq!(r3.p_coeffs, big(&[0, 6, 1]));
        assert_eq!(r3.q_coeffs, big(&[6, 4]));
        // R4 reduces to 3x(x+2)/(x^2+6x+6)
        let r4 = cf_convergent(4).unwrap();
        for x in [0.3, 1.0, 7.0] {
            let reduced = 3.0 * x * (x + 2.0) / (x * x + 6.0 * x + 6.0);
            assert!((r4.eval(x) - reduced).abs() < 1e-13 * reduced.abs());
        }
        assert!(cf_convergent(0).is_err());
        assert!(cf_convergent(MAX_CONVERGENT + 1).is_err());
    }

    #[test]
    fn degree_law_and_positive_denominator() {
        for n in 1..=20u32 {
            let c = cf_convergent(n).unwrap();
            assert_eq!(c.degree_p(), ((n + 1) / 2) as usize, "P degree at n={n}");
            assert_eq!(c.degree_q(), (n / 2) as usize, "Q degree at n={n}");
            for x in [1e-3, 0.5, 3.0, 800.0] {
                assert!(poly_eval(&c.q_coeffs, x) > 0.0, "Q_{n}({x}) <= 0");
            }
        }
    }

    #[test]
    fn two_evaluation_routes_agree() {
        for n in 1..=12u32 {
            let c = cf_convergent(n).unwrap();
            for x in [0.1, 1.0, 5.0, 50.0] {
                let direct = cf_eval(n, x).unwrap();
                let poly = c.eval(x);
                assert!(
                    (direct - poly).abs() < 1e-11 * poly.abs().max(1.0),
                    "n={n} x={x}: {direct} vs {poly}"
                );
            }
        }
        assert!(cf_eval(3, -1.0).is_err());
    }

    #[test]
    fn convergents_interleave_around_the_logarithm() {
        // even from below, odd from above, both one-sided monotone
        let at_one: Vec<f64> = (1..=7).map(|n| cf_eval(n, 1.0).unwrap()).collect();
        let (r1, r2, r3, r4, r5, r6, r7) =
            (at_one[0], at_one[1], at_one[2], at_one[3], at_one[4], at_one[5], at_one[6]);
        assert!(r2 < r4 && r4 < r6 && r6 < LN_2);
        assert!(LN_2 < r7 && r7 < r5 && r5 < r3 && r3 < r1);
        assert!((cf_eval(9, 1.0).unwrap() - LN_2).abs() < 1e-6);
    }

    #[test]
    fn factorial_root_series() {
        assert_eq!(sqrt_factorial_series(0.0, 1e-12).unwrap(), 1.0);
        // brute-force oracle over 60 terms, computed right here
        let mut brute = 0.0f64;
        let mut fact = 1.0f64;
        for k in 0..60u32 {
            if k > 0 {
                fact *= k as f64;
            }
            brute += 1.0 / fact.sqrt();
        }
        let f1 = sqrt_factorial_series(1.0, 1e-14).unwrap();
        assert!((f1 - brute).abs() < 1e-12);
        assert!((f1 - 3.4695063145210476).abs() < 1e-10);
        // negative arguments where doubles still resolve the value
        for (x, expect) in [(-1.0, 0.4385998967), (-2.0, 0.2475396168), (-4.0, 0.1173994045)] {
            let v = sqrt_factorial_series(x, 1e-14).unwrap();
            assert!(v > 0.0, "f({x}) = {v} not positive");
            assert!((v - expect).abs() < 1e-8, "f({x}) = {v}, expected {expect}");
        }
        // at -10 the alternating noise swamps the tiny true value;
        // finiteness is all doubles can certify
        assert!(sqrt_factorial_series(-10.0, 1e-14).unwrap().is_finite());
        assert!(sqrt_factorial_series(1.0, 0.0).is_err());
    }

    #[test]
    fn sharpness_knobs_flip_where_claimed() {
        for (id, hold_at, fail_at) in
            [("eq09", 1.0, 1.01), ("eq10", 2.0, 1.99), ("eq13", 2.0, 1.99)]
        {
            let knob = sharpness_knob(id).unwrap();
            let rows = cert::sharpness_probe(
                knob,
                &[hold_at, fail_at],
                20_000,
                42,
                Strategy::LogUniform,
            )
            .unwrap();
            assert!(rows[0].holds, "{id} should hold at delta={hold_at}");
            assert!(!rows[1].holds, "{id} should fail at delta={fail_at}");
        }
        assert!(sharpness_knob("eq05").is_err());
    }
}
