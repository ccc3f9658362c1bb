//! Scalar root finding and relaxed fixed-point iteration.
//!
//! Three workhorses cover the crate's needs: bracketing bisection (slow,
//! unconditional), Newton (fast near simple roots, honest about failure
//! modes), and relaxed fixed-point iteration x <- x + lambda*(g(x) - x)
//! whose relaxation factor can be chosen from the local slope of g.  Every
//! solver returns its full iterate history so callers can assert
//! convergence *rates*, not just limits.

use crate::error::{Error, Result};

/// Outcome of a solver run.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    /// Final iterate.
    pub root: f64,
    /// All iterates in order, starting with the initial guess.
    pub iterates: Vec<f64>,
    /// Iterations actually performed.
    pub iterations: usize,
    /// |f(root)| for root solvers, |x_{k+1} - x_k| for fixed points.
    pub residual: f64,
    /// Whether the tolerance was met within the budget.
    pub converged: bool,
}

/// Bracketing bisection on [lo, hi].
///
/// Requires a sign change; halves the interval until its width drops
/// below `tol` and returns the midpoint.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<SolveTrace> {
    check_tol(tol)?;
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(done(lo, vec![lo], 0.0));
    }
    if fhi == 0.0 {
        return Ok(done(hi, vec![hi], 0.0));
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { lo, hi, flo, fhi });
    }
    let mut iterates = Vec::new();
    let mut mid = 0.5 * (lo + hi);
    while hi - lo > tol {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        iterates.push(mid);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(done(mid, iterates, 0.0));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let residual = f(mid).abs();
    Ok(done(mid, iterates, residual))
}

/// Newton iteration from `x0` with analytic derivative.
///
/// Converges when the step size drops below `tol`.  A vanishing derivative
/// aborts with `DerivativeZero`; exceeding `maxit` yields `NoConvergence`.
pub fn newton<F, D>(f: F, df: D, x0: f64, tol: f64, maxit: usize) -> Result<SolveTrace>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    check_tol(tol)?;
    let mut x = x0;
    let mut iterates = vec![x0];
    for k in 1..=maxit {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(done(x, iterates, 0.0));
        }
        let dfx = df(x);
        if dfx == 0.0 || !dfx.is_finite() {
            return Err(Error::DerivativeZero { at: x });
        }
        let next = x - fx / dfx;
        iterates.push(next);
        let step = (next - x).abs();
        x = next;
        if !x.is_finite() {
            return Err(Error::NoConvergence { iterations: k, residual: f64::INFINITY });
        }
        if step <= tol {
            return Ok(SolveTrace {
                root: x,
                iterations: k,
                residual: f(x).abs(),
                converged: true,
                iterates,
            });
        }
    }
    Err(Error::NoConvergence { iterations: maxit, residual: f(x).abs() })
}

/// Relaxed fixed-point iteration x <- x + lambda*(g(x) - x).
///
/// Converges when consecutive iterates differ by at most `tol`.  Iterates
/// escaping the hull spanned by x0/1e6 and x0*1e6 (symmetric variant for
/// non-positive starts) report `Divergence`; a spent budget reports
/// `NoConvergence`.
pub fn fixed_point<G: Fn(f64) -> f64>(
    g: G,
    x0: f64,
    lambda: f64,
    tol: f64,
    maxit: usize,
) -> Result<SolveTrace> {
    check_tol(tol)?;
    let (hull_lo, hull_hi) = divergence_hull(x0);
    let mut x = x0;
    let mut iterates = vec![x0];
    for k in 1..=maxit {
        let next = x + lambda * (g(x) - x);
        iterates.push(next);
        if !next.is_finite() || next < hull_lo || next > hull_hi {
            return Err(Error::Divergence { value: next, iterations: k });
        }
        let step = (next - x).abs();
        x = next;
        if step <= tol {
            return Ok(SolveTrace {
                root: x,
                iterations: k,
                residual: step,
                converged: true,
                iterates,
            });
        }
    }
    let residual = (g(x) - x).abs();
    Err(Error::NoConvergence { iterations: maxit, residual })
}

/// Near-optimal relaxation factor 1/(1 - g'(x)) at `x`.
///
/// The slope is a central difference with step 1e-6 * max(1, |x|).  When
/// g'(x) is within 1e-8 of 1 the factor is singular and the call fails.
pub fn optimal_lambda<G: Fn(f64) -> f64>(g: G, x: f64) -> Result<f64> {
    let h = 1e-6 * x.abs().max(1.0);
    let slope = (g(x + h) - g(x - h)) / (2.0 * h);
    let denom = 1.0 - slope;
    if denom.abs() < 1e-8 {
        return Err(Error::DerivativeSingular { at: x });
    }
    Ok(1.0 / denom)
}

/// Bracketed hybrid: bisection to a coarse interval, then secant polish.
///
/// Used where a guaranteed containment matters more than speed (implicit
/// deviation functions, quasi-arithmetic inversion).  Secant steps that
/// leave the bracket fall back to bisection, so the result stays inside
/// [lo, hi] and within `tol` of the root.
pub fn bisect_then_secant<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { lo, hi, flo, fhi });
    }
    let coarse = 1e-6 * (lo.abs().max(hi.abs()).max(1.0));
    while hi - lo > coarse {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    // Secant refinement inside the bracket.
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, flo, fhi);
    for _ in 0..80 {
        if b - a <= tol {
            break;
        }
        let mut x = b - fb * (b - a) / (fb - fa);
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

fn divergence_hull(x0: f64) -> (f64, f64) {
    if x0 > 0.0 {
        (x0 / 1e6, x0 * 1e6)
    } else if x0 < 0.0 {
        (x0 * 1e6, x0 / 1e6)
    } else {
        (-1e6, 1e6)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance {tol} must be positive")));
    }
    Ok(())
}

fn done(root: f64, iterates: Vec<f64>, residual: f64) -> SolveTrace {
    SolveTrace { root, iterations: iterates.len().saturating_sub(1), residual, converged: true, iterates }
}
