//! Sampling-based inequality certifier.
//!
//! A bound family packages "lhs <= rhs on this domain" behind a closure.
//! Certification draws deterministic points from the counter RNG (so a
//! (seed, strategy) pair is portable and re-runnable), evaluates both sides
//! in parallel, and reduces in sample-index order.  A sample is a violation
//! when gap = rhs - lhs < -1e-12 * (|lhs| + |rhs| + 1); families span ten
//! orders of magnitude, so the tolerance must be scale-aware.  Strict (<)
//! families use the same rule: an equality hit within tolerance is not a
//! counterexample, only a genuinely negative gap is.

use crate::error::{Error, Result};
use crate::rng;
use rayon::prelude::*;

/// Retained counterexamples per certificate; violations beyond this are
/// still counted in `strict_violations`.
pub const MAX_COUNTEREXAMPLES: usize = 32;

/// Relative violation tolerance: gap < -GAP_TOLERANCE * (|lhs|+|rhs|+1).
pub const GAP_TOLERANCE: f64 = 1e-12;

/// Log-sampling floor for domains touching zero, relative to the upper end.
const LOG_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Uniform,
    LogUniform,
    Grid,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::LogUniform => "log_uniform",
            Self::Grid => "grid",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "uniform" => Ok(Self::Uniform),
            "log_uniform" => Ok(Self::LogUniform),
            "grid" => Ok(Self::Grid),
            other => Err(Error::UnknownId(format!("strategy {other}"))),
        }
    }
}

/// A sample location: scalar families, positive pairs, or complex points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Real(f64),
    Pair(f64, f64),
    Complex(f64, f64),
}

type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type TwoVarFn = Box<dyn Fn(f64, f64) -> (f64, f64) + Send + Sync>;

/// Scalar sampling range; the open flags record whether the mathematical
/// statement excludes the endpoint (samplers never land on endpoints).
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Interval {
    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: true, open_hi: true }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: false, open_hi: false }
    }
}

/// How a family is sampled and evaluated.
pub enum Support {
    /// One free variable; lhs and rhs evaluated separately.
    Scalar { lhs: ScalarFn, rhs: ScalarFn, domain: Interval },
    /// Positive pair (x, y), both coordinates drawn from [lo, hi].
    Pair { eval: TwoVarFn, lo: f64, hi: f64 },
    /// Complex rectangle; eval receives (re, im).
    Complex { eval: TwoVarFn, re: (f64, f64), im: (f64, f64) },
}

/// A certified statement lhs <= rhs (or < when `strict`).
pub struct BoundFamily {
    pub id: String,
    /// Human-readable statement, e.g. "x/(x+1) < ln(1+x) on x > 0".
    pub formula: String,
    pub strict: bool,
    pub support: Support,
}

impl BoundFamily {
    pub fn scalar(
        id: impl Into<String>,
        formula: impl Into<String>,
        strict: bool,
        domain: Interval,
        lhs: impl Fn(f64) -> f64 + Send + Sync + 'static,
        rhs: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            formula: formula.into(),
            strict,
            support: Support::Scalar { lhs: Box::new(lhs), rhs: Box::new(rhs), domain },
        }
    }

    pub fn pair(
        id: impl Into<String>,
        formula: impl Into<String>,
        strict: bool,
        lo: f64,
        hi: f64,
        eval: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            formula: formula.into(),
            strict,
            support: Support::Pair { eval: Box::new(eval), lo, hi },
        }
    }

    pub fn complex(
        id: impl Into<String>,
        formula: impl Into<String>,
        strict: bool,
        re: (f64, f64),
        im: (f64, f64),
        eval: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            formula: formula.into(),
            strict,
            support: Support::Complex { eval: Box::new(eval), re, im },
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Counterexample {
    pub point: Point,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Outcome of a certification run.  `worst_gap` is the raw minimum of
/// rhs - lhs over all samples; `strict_violations` counts every sample
/// whose gap fell below the scale-aware tolerance (or failed to evaluate
/// to a finite value), of which the first `MAX_COUNTEREXAMPLES` are kept.
#[derive(Debug)]
pub struct Certificate {
    pub family_id: String,
    pub samples: u64,
    pub seed: u64,
    pub strategy: Strategy,
    pub holds: bool,
    pub worst_gap: f64,
    pub worst_point: Point,
    pub counterexamples: Vec<Counterexample>,
    pub strict_violations: u64,
}

fn violation_tolerance(lhs: f64, rhs: f64) -> f64 {
    GAP_TOLERANCE * (lhs.abs() + rhs.abs() + 1.0)
}

fn grid_coord(lo: f64, hi: f64, i: u64, n: u64) -> f64 {
    lo + (i as f64 + 0.5) * (hi - lo) / n as f64
}

fn log_range(lo: f64, hi: f64) -> Result<(f64, f64)> {
    if hi <= 0.0 || lo < 0.0 {
        return Err(Error::Parameter(format!(
            "log sampling needs a nonnegative range, got ({lo}, {hi})"
        )));
    }
    Ok((if lo > 0.0 { lo } else { hi * LOG_FLOOR }, hi))
}

fn scalar_point(domain: &Interval, strategy: Strategy, seed: u64, i: u64, n: u64) -> Result<f64> {
    Ok(match strategy {
        Strategy::Uniform => rng::uniform(seed, i, domain.lo, domain.hi),
        Strategy::LogUniform => {
            let (lo, hi) = log_range(domain.lo, domain.hi)?;
            rng::log_uniform(seed, i, lo, hi)
        }
        Strategy::Grid => grid_coord(domain.lo, domain.hi, i, n),
    })
}

fn square_point(
    lo: (f64, f64),
    hi: (f64, f64),
    strategy: Strategy,
    seed: u64,
    i: u64,
    n: u64,
) -> Result<(f64, f64)> {
    Ok(match strategy {
        Strategy::Uniform => (
            rng::uniform(seed, 2 * i, lo.0, hi.0),
            rng::uniform(seed, 2 * i + 1, lo.1, hi.1),
        ),
        Strategy::LogUniform => {
            let (a0, b0) = log_range(lo.0, hi.0)?;
            let (a1, b1) = log_range(lo.1, hi.1)?;
            (rng::log_uniform(seed, 2 * i, a0, b0), rng::log_uniform(seed, 2 * i + 1, a1, b1))
        }
        Strategy::Grid => {
            // row-major midpoint lattice, side = ceil(sqrt(n))
            let side = (n as f64).sqrt().ceil() as u64;
            let (r, c) = (i / side, i % side);
            (grid_coord(lo.0, hi.0, r, side), grid_coord(lo.1, hi.1, c, side))
        }
    })
}

/// Certify a family over `samples` deterministic points.
pub fn certify(
    family: &BoundFamily,
    samples: u64,
    seed: u64,
    strategy: Strategy,
) -> Result<Certificate> {
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    let sane = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
    let ok = match &family.support {
        Support::Scalar { domain, .. } => sane(domain.lo, domain.hi),
        Support::Pair { lo, hi, .. } => sane(*lo, *hi),
        Support::Complex { re, im, .. } => sane(re.0, re.1) && sane(im.0, im.1),
    };
    if !ok {
        return Err(Error::Domain(format!("family {}: empty or unbounded domain", family.id)));
    }

    let evaluated: Result<Vec<(Point, f64, f64)>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (point, lhs, rhs) = match &family.support {
                Support::Scalar { lhs, rhs, domain } => {
                    let x = scalar_point(domain, strategy, seed, i, samples)?;
                    (Point::Real(x), lhs(x), rhs(x))
                }
                Support::Pair { eval, lo, hi } => {
                    let (x, y) = square_point((*lo, *lo), (*hi, *hi), strategy, seed, i, samples)?;
                    let (l, r) = eval(x, y);
                    (Point::Pair(x, y), l, r)
                }
                Support::Complex { eval, re, im } => {
                    let (x, y) =
                        square_point((re.0, im.0), (re.1, im.1), strategy, seed, i, samples)?;
                    let (l, r) = eval(x, y);
                    (Point::Complex(x, y), l, r)
                }
            };
            Ok((point, lhs, rhs))
        })
        .collect();
    let evaluated = evaluated?;

    let mut worst_gap = f64::INFINITY;
    let mut worst_point = evaluated[0].0;
    let mut counterexamples = Vec::new();
    let mut strict_violations: u64 = 0;
    for &(point, lhs, rhs) in &evaluated {
        let gap = rhs - lhs;
        if gap < worst_gap {
            worst_gap = gap;
            worst_point = point;
        }
        let violated = !gap.is_finite() || gap < -violation_tolerance(lhs, rhs);
        if violated {
            strict_violations += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(Counterexample { point, lhs, rhs, gap });
            }
        }
    }

    Ok(Certificate {
        family_id: family.id.clone(),
        samples,
        seed,
        strategy,
        holds: strict_violations == 0,
        worst_gap,
        worst_point,
        counterexamples,
        strict_violations,
    })
}

/// One row of a sharpness scan.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessRow {
    pub delta: f64,
    pub holds: bool,
    pub worst_gap: f64,
}

/// Certify a delta-parametrized family across a grid of knob values; the
/// delta where `holds` flips brackets the sharp constant.
pub fn sharpness_probe(
    knob: impl Fn(f64) -> BoundFamily,
    delta_grid: &[f64],
    samples: u64,
    seed: u64,
    strategy: Strategy,
) -> Result<Vec<SharpnessRow>> {
    if delta_grid.is_empty() {
        return Err(Error::Parameter("empty delta grid".into()));
    }
    delta_grid
        .iter()
        .map(|&delta| {
            let cert = certify(&knob(delta), samples, seed, strategy)?;
            Ok(SharpnessRow { delta, holds: cert.holds, worst_gap: cert.worst_gap })
        })
        .collect()
}

/// 17-significant-digit JSON number; non-finite values map to null.
pub fn json_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn json_point(p: &Point) -> String {
    match p {
        Point::Real(x) => format!("{{\"type\":\"real\",\"x\":{}}}", json_f64(*x)),
        Point::Pair(x, y) => {
            format!("{{\"type\":\"pair\",\"x\":{},\"y\":{}}}", json_f64(*x), json_f64(*y))
        }
        Point::Complex(re, im) => {
            format!("{{\"type\":\"complex\",\"re\":{},\"im\":{}}}", json_f64(*re), json_f64(*im))
        }
    }
}

impl Certificate {
    /// Stable-key-order JSON; byte-identical for identical runs.
    pub fn to_json(&self) -> String {
        let ces: Vec<String> = self
            .counterexamples
            .iter()
            .map(|c| {
                format!(
                    "{{\"point\":{},\"lhs\":{},\"rhs\":{},\"gap\":{}}}",
                    json_point(&c.point),
                    json_f64(c.lhs),
                    json_f64(c.rhs),
                    json_f64(c.gap)
                )
            })
            .collect();
        format!(
            "{{\"family_id\":{:?},\"samples\":{},\"seed\":{},\"strategy\":\"{}\",\"holds\":{},\"worst_gap\":{},\"worst_point\":{},\"counterexamples\":[{}],\"strict_violations\":{}}}",
            self.family_id,
            self.samples,
            self.seed,
            self.strategy.name(),
            self.holds,
            json_f64(self.worst_gap),
            json_point(&self.worst_point),
            ces.join(","),
            self.strict_violations
        )
    }
}
