//! Richardson extrapolation on an arbitrary step grid.
//!
//! Neville's scheme evaluates at h = 0 the interpolating polynomial through
//! (h_i, g(h_i)).  With h_i = 1/n_i this removes the leading 1/n error
//! terms of a sequence limit without assuming a uniform step ratio.

use crate::error::{Error, Result};

/// Extrapolate the samples `(h_i, g_i)` to h = 0.
///
/// Steps must be distinct, positive, and finite; at least one sample is
/// required.  With a single sample the value itself is returned.
pub fn to_zero(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Extrapolation("no samples".into()));
    }
    for &(h, g) in samples {
        if !(h.is_finite() && h > 0.0) || !g.is_finite() {
            return Err(Error::Extrapolation(format!("bad sample ({h}, {g})")));
        }
    }
    let h: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut t: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let n = t.len();
    for level in 1..n {
        for i in 0..n - level {
            let denom = h[i] - h[i + level];
            if denom == 0.0 {
                return Err(Error::Extrapolation(format!("repeated step {}", h[i])));
            }
            // Neville update for the value at h = 0.
            t[i] = (h[i] * t[i + 1] - h[i + level] * t[i]) / denom;
        }
    }
    Ok(t[0])
}
