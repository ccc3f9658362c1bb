//! Deterministic counter-based random numbers.
//!
//! Every sampling operation in the crate draws from SplitMix64 used in
//! counter mode: draw `i` of stream `seed` is the SplitMix64 finalizer
//! applied to `seed + (i + 1) * GOLDEN_GAMMA`.  The generator is stateless,
//! so a (seed, index) pair names a value independently of evaluation order,
//! thread count, or platform.  The same construction is trivially portable
//! to other languages, which keeps recorded certificates reproducible
//! outside this crate.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Raw 64-bit draw `index` of stream `seed`.
#[inline]
pub fn draw(seed: u64, index: u64) -> u64 {
    mix(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Draw mapped to the open interval (0, 1).
///
/// The half-ulp offset keeps both endpoints strictly excluded, so samples
/// stay inside open domains.
#[inline]
pub fn unit_open(seed: u64, index: u64) -> f64 {
    ((draw(seed, index) >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Uniform draw on (lo, hi).
#[inline]
pub fn uniform(seed: u64, index: u64, lo: f64, hi: f64) -> f64 {
    lo + unit_open(seed, index) * (hi - lo)
}

/// Log-uniform draw on (lo, hi); requires 0 < lo < hi.
#[inline]
pub fn log_uniform(seed: u64, index: u64, lo: f64, hi: f64) -> f64 {
    debug_assert!(lo > 0.0 && lo < hi);
    (lo.ln() + unit_open(seed, index) * (hi.ln() - lo.ln())).exp()
}
