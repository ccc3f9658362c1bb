//! Neumaier-compensated accumulation.
//!
//! Partial sums of slowly decaying series are accumulated smallest-first
//! with a running compensation term, keeping the rounding error near one
//! ulp of the result instead of growing with the term count.

/// Compensated accumulator (Neumaier's variant of Kahan summation).
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
