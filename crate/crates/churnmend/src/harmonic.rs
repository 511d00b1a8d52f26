//! Partial harmonic sums and the two window-averaged ratios whose
//! monotonicity drives every threshold comparison in this crate.
//!
//! The central quantity is the tail sum `H(u, l) = 1/(l+1) + ... + 1/u`,
//! which measures expected sequential waiting through states `u` down to
//! `l+1` of a pure-death chain with per-node rate 1. The two ratios
//! average that sum over a window of fixed width: `ratio_f` looks upward
//! from `x`, `ratio_g` looks downward, and both are strictly monotone in
//! the window width. Those monotonicity facts, plus the sandwich bound
//! `1/(x+delta) <= ratio_f(x, delta) < 1/x`, are what make the optimal
//! repair thresholds land on interval endpoints.

use crate::error::{Error, Result};

/// A validated pair of summation limits with `upper >= lower`.
///
/// Selects the tail sum `sum_{i=lower+1}^{upper} 1/i`; the pair
/// `(x, x)` selects the empty sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexPair {
    upper: u32,
    lower: u32,
}

impl IndexPair {
    /// Validates `upper >= lower`.
    pub fn new(upper: u32, lower: u32) -> Result<Self> {
        if upper < lower {
            return Err(Error::IndexOrder { upper, lower });
        }
        Ok(Self { upper, lower })
    }

    /// Upper summation limit (inclusive).
    pub fn upper(self) -> u32 {
        self.upper
    }

    /// Lower summation limit (exclusive).
    pub fn lower(self) -> u32 {
        self.lower
    }
}

/// Tail harmonic sum `sum_{i=lower+1}^{upper} 1/i`; exactly 0 for an
/// empty window.
pub fn partial_harmonic(pair: IndexPair) -> f64 {
    psum(pair.upper, pair.lower)
}

/// Crate-internal fast path; callers guarantee `upper >= lower`.
///
/// Terms are accumulated smallest-first (descending index) so results are
/// reproducible and keep relative error below 1e-12 for indices up to 1e4.
pub(crate) fn psum(upper: u32, lower: u32) -> f64 {
    debug_assert!(upper >= lower, "psum requires upper >= lower");
    let mut acc = 0.0_f64;
    let mut i = upper;
    while i > lower {
        acc += 1.0 / f64::from(i);
        i -= 1;
    }
    acc
}

/// Upward window average `H(x+delta, x) / delta`.
///
/// Strictly decreasing in `delta` for fixed `x`, and bounded by
/// `1/(x+delta) <= ratio_f(x, delta) < 1/x`.
pub fn ratio_f(x: u32, delta: u32) -> Result<f64> {
    if x == 0 || delta == 0 {
        return Err(Error::RatioDomain { x, delta });
    }
    Ok(psum(x + delta, x) / f64::from(delta))
}

/// Downward window average `H(x, x-delta) / delta`.
///
/// Strictly increasing in `delta` for fixed `x`; requires
/// `1 <= delta <= x-1` so every term stays positive.
pub fn ratio_g(x: u32, delta: u32) -> Result<f64> {
    if delta == 0 || delta >= x {
        return Err(Error::RatioDomain { x, delta });
    }
    Ok(psum(x, x - delta) / f64::from(delta))
}
