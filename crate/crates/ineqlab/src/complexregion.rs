//! Where do real inequalities survive complexification?  Three case
//! studies on the complex plane.
//!
//! The squared AM-GM comparison |s| <= |(s+1)/2|^2 holds outside a closed
//! quartic curve through s = 1 and fails inside it.  Writing s = x + iy
//! the boundary is the zero set of
//!
//!   x^4 + y^4 + 2x^2y^2 + 4x^3 + 4xy^2 - 10x^2 - 14y^2 + 4x + 1,
//!
//! which factors against the defining residual, so classifying by either
//! expression must agree.  In polar form the curve has two radii per
//! angle, r-(phi) r+(phi) = 1, pinching to the single point 1 at phi = 0.
//!
//! The logarithm bound |ln(1+z)| <= |z| is true on the positive real axis
//! but fails on an open set reaching the origin from the left half-plane;
//! a grid scan plus per-ray crossing search maps that failure region.
//!
//! The deviation function eps(z) = 1/ln(1+1/z) - z extends off the
//! positive axis with a cut along [-1, 0]; its modulus stays below 1/2 on
//! the positive reals but not elsewhere, which a grid supremum exposes.

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Plain re/im pair used at the API surface so callers never depend on
/// the internal complex type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    fn as_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_complex(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionStatus {
    /// Strictly inside the failure region (inequality violated).
    Inside,
    /// Within classification tolerance of the boundary curve.
    Boundary,
    /// Inequality holds with margin.
    Outside,
}

impl RegionStatus {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Inside => "inside",
            Self::Boundary => "boundary",
            Self::Outside => "outside",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RegionVerdict {
    pub status: RegionStatus,
    pub residual: f64,
}

fn classify(residual: f64, tol: f64) -> RegionVerdict {
    let status = if residual.abs() <= tol {
        RegionStatus::Boundary
    } else if residual > 0.0 {
        RegionStatus::Outside
    } else {
        RegionStatus::Inside
    };
    RegionVerdict { status, residual }
}

fn require_finite(s: ComplexPoint) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("point ({}, {}) is not finite", s.re, s.im)));
    }
    Ok(s.as_complex())
}

fn amgm_residual(s: Complex64) -> f64 {
    ((s + 1.0) / 2.0).norm_sqr() - s.norm()
}

/// Classify s against |s| <= |(s+1)/2|^2; residual > 0 means the
/// inequality holds.
pub fn amgm_classify(s: ComplexPoint) -> Result<RegionVerdict> {
    let z = require_finite(s)?;
    let tol = 1e-9 * (1.0 + z.norm()).powi(2);
    Ok(classify(amgm_residual(z), tol))
}

/// The quartic boundary polynomial in the coordinates s = x + iy.
pub fn quartic_residual(s: ComplexPoint) -> Result<f64> {
    require_finite(s)?;
    let (x, y) = (s.re, s.im);
    let x2 = x * x;
    let y2 = y * y;
    Ok(x2 * x2 + y2 * y2 + 2.0 * x2 * y2 + 4.0 * x2 * x + 4.0 * x * y2 - 10.0 * x2
        - 14.0 * y2
        + 4.0 * x
        + 1.0)
}

/// Classify through the quartic polynomial instead of the defining
/// residual; the two must agree because the quartic factors as
/// 16 (|(s+1)/2|^2 - |s|) (|(s+1)/2|^2 + |s|).
pub fn quartic_classify(s: ComplexPoint) -> Result<RegionVerdict> {
    let z = require_finite(s)?;
    let tol = 1e-9 * (1.0 + z.norm()).powi(4);
    Ok(classify(quartic_residual(s)?, tol))
}

/// Inner and outer radius of the boundary curve along direction phi.
/// With c = 2 - cos(phi) the radii are c -+ sqrt(c^2 - 1); their product
/// is exactly 1 and they merge at phi = 0.
pub fn polar_curve(phi: f64) -> Result<(f64, f64)> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got {phi}")));
    }
    let c = 2.0 - phi.cos();
    let disc = (c * c - 1.0).max(0.0);
    let root = disc.sqrt();
    Ok((c - root, c + root))
}

/// Axis traces of the holds-region, as closed intervals with infinite
/// ends where the region is unbounded.
#[derive(Debug, Clone)]
pub struct AxisIntervals {
    pub real: Vec<(f64, f64)>,
    pub imag: Vec<(f64, f64)>,
}

/// Intervals of {t : f(t) >= 0} inside the scan window, found by a sign
/// scan plus bisection.  A window end with f >= 0 extends to infinity.
fn holds_intervals(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / n as f64;
    let mut roots = Vec::new();
    let mut prev_t = lo;
    let mut prev_f = f(lo);
    for i in 1..=n {
        let t = lo + step * i as f64;
        let ft = f(t);
        if prev_f.signum() != ft.signum() && prev_f != 0.0 && ft != 0.0 {
            let (mut a, mut b, mut fa) = (prev_t, t, prev_f);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_t = t;
        prev_f = ft;
    }
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend(&roots);
    edges.push(f64::INFINITY);
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let probe = match (w[0].is_finite(), w[1].is_finite()) {
            (true, true) => 0.5 * (w[0] + w[1]),
            (true, false) => hi,
            (false, true) => lo,
            (false, false) => 0.5 * (lo + hi),
        };
        if f(probe) >= 0.0 {
            out.push((w[0], w[1]));
        }
    }
    out
}

/// Where the AM-GM comparison holds on the two coordinate axes.  The real
/// trace ends at -3 -+ 2 sqrt(2); the imaginary trace at +-(2 -+ sqrt(3)).
pub fn axis_intervals() -> AxisIntervals {
    let real = holds_intervals(|x| amgm_residual(Complex64::new(x, 0.0)), -8.0, 8.0, 4096);
    let imag = holds_intervals(|y| amgm_residual(Complex64::new(0.0, y)), -8.0, 8.0, 4096);
    AxisIntervals { real, imag }
}

/// Classify s against the modulus-only variant (|s|+1)^2/4 >= |s|.  The
/// residual equals ((|s|-1)/2)^2, so Inside never occurs; the region
/// degenerates to the unit circle as boundary.
pub fn amgm_modulus_classify(s: ComplexPoint) -> Result<RegionVerdict> {
    let z = require_finite(s)?;
    let n = z.norm();
    let residual = (n + 1.0) * (n + 1.0) / 4.0 - n;
    let tol = 1e-9 * (1.0 + n).powi(2);
    Ok(classify(residual, tol))
}

/// Inclusive rectangular lattice: nx columns spanning [re_lo, re_hi] and
/// ny rows spanning [im_lo, im_hi], endpoints on the grid.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(re: (f64, f64), im: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        if !(re.0 < re.1 && im.0 < im.1)
            || !re.0.is_finite()
            || !re.1.is_finite()
            || !im.0.is_finite()
            || !im.1.is_finite()
        {
            return Err(Error::Parameter(format!(
                "grid rectangle must be finite and nondegenerate, got re {re:?} im {im:?}"
            )));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::Parameter(format!("grid needs at least 2x2 nodes, got {nx}x{ny}")));
        }
        Ok(Self { re_lo: re.0, re_hi: re.1, im_lo: im.0, im_hi: im.1, nx, ny })
    }

    fn x(&self, i: usize) -> f64 {
        self.re_lo + (self.re_hi - self.re_lo) * i as f64 / (self.nx - 1) as f64
    }

    fn y(&self, j: usize) -> f64 {
        self.im_lo + (self.im_hi - self.im_lo) * j as f64 / (self.ny - 1) as f64
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub status: RegionStatus,
}

/// First radius along a ray where the scan function changes sign, if any.
#[derive(Debug, Clone, Copy)]
pub struct RayCrossing {
    pub theta: f64,
    pub radius: Option<f64>,
}

const BRANCH_PUNCTURE: f64 = 1e-9;

/// ln(1+w) on the principal branch without forming 1+w, so small and
/// near-axis arguments keep full precision: the real part is
/// ln|1+w| = ln_1p(2 Re w + |w|^2) / 2.
fn ln_1p_complex(w: Complex64) -> Complex64 {
    Complex64::new(
        0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p(),
        w.im.atan2(1.0 + w.re),
    )
}

fn log_residual(z: Complex64) -> f64 {
    z.norm() - ln_1p_complex(z).norm()
}

/// Scan |ln(1+z)| <= |z| over the grid (row-major, rows in increasing im
/// order) and locate, for `rays` directions from the origin, the first
/// sign change of the residual.  Nodes inside the 1e-9 puncture around
/// the branch point z = -1 are skipped.
pub fn log_region_scan(grid: &GridSpec, rays: usize) -> Result<(Vec<ScanPoint>, Vec<RayCrossing>)> {
    if rays == 0 {
        return Err(Error::Parameter("ray count must be positive".into()));
    }
    let rows: Vec<Vec<ScanPoint>> = (0..grid.ny)
        .into_par_iter()
        .map(|j| {
            let im = grid.y(j);
            (0..grid.nx)
                .filter_map(|i| {
                    let re = grid.x(i);
                    let z = Complex64::new(re, im);
                    if (z + 1.0).norm() <= BRANCH_PUNCTURE {
                        return None;
                    }
                    let residual = log_residual(z);
                    let tol = 1e-9 * (1.0 + z.norm());
                    Some(ScanPoint { re, im, residual, status: classify(residual, tol).status })
                })
                .collect()
        })
        .collect();
    let points: Vec<ScanPoint> = rows.into_iter().flatten().collect();

    let r_max = grid.re_lo.abs().max(grid.re_hi.abs()).hypot(grid.im_lo.abs().max(grid.im_hi.abs()));
    let crossings: Vec<RayCrossing> = (0..rays)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / rays as f64;
            let dir = Complex64::new(theta.cos(), theta.sin());
            let at = |r: f64| log_residual(dir * r);
            let steps = 2048usize;
            let mut prev_r = r_max / steps as f64;
            let mut prev_f = at(prev_r);
            let mut radius = None;
            for m in 2..=steps {
                let r = r_max * m as f64 / steps as f64;
                if (dir * r + 1.0).norm() <= BRANCH_PUNCTURE {
                    continue;
                }
                let fr = at(r);
                if prev_f.signum() != fr.signum() && prev_f != 0.0 && fr != 0.0 {
                    let (mut a, mut b, mut fa) = (prev_r, r, prev_f);
                    for _ in 0..80 {
                        let mid = 0.5 * (a + b);
                        let fm = at(mid);
                        if fm.signum() == fa.signum() {
                            a = mid;
                            fa = fm;
                        } else {
                            b = mid;
                        }
                    }
                    radius = Some(0.5 * (a + b));
                    break;
                }
                prev_r = r;
                prev_f = fr;
            }
            RayCrossing { theta, radius }
        })
        .collect();
    Ok((points, crossings))
}

/// eps(z) = 1/ln(1+1/z) - z on the cut plane, rejecting the segment
/// [-1, 0] (where 1+1/z crosses its own branch cut or blows up) plus
/// 1e-9 punctures at the endpoints.  Returns the value and its modulus.
pub fn eps_complex(z: ComplexPoint) -> Result<(ComplexPoint, f64)> {
    let s = require_finite(z)?;
    if s.im == 0.0 && (-1.0..=0.0).contains(&s.re) {
        return Err(Error::Domain(format!("{} lies on the cut segment [-1, 0]", s.re)));
    }
    if s.norm() <= BRANCH_PUNCTURE || (s + 1.0).norm() <= BRANCH_PUNCTURE {
        return Err(Error::Domain("point inside a branch-point puncture".into()));
    }
    let w = ln_1p_complex(1.0 / s);
    let value = 1.0 / w - s;
    Ok((ComplexPoint::from_complex(value), value.norm()))
}

/// Empirical supremum of |eps| over grid nodes, skipping cut and
/// puncture rejections.  Returns the supremum and where it occurred.
pub fn eps_complex_sup(grid: &GridSpec) -> Result<(f64, ComplexPoint)> {
    let best = (0..grid.ny)
        .into_par_iter()
        .map(|j| {
            let im = grid.y(j);
            let mut row_best: Option<(f64, ComplexPoint)> = None;
            for i in 0..grid.nx {
                let p = ComplexPoint::new(grid.x(i), im);
                if let Ok((_, modulus)) = eps_complex(p) {
                    if modulus.is_finite()
                        && row_best.map_or(true, |(b, _)| modulus > b)
                    {
                        row_best = Some((modulus, p));
                    }
                }
            }
            row_best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if x.0 >= y.0 { x } else { y }),
                (x, None) => x,
                (None, y) => y,
            },
        );
    best.ok_or_else(|| Error::Domain("no grid node survived the domain checks".into()))
}
