//! Partial harmonic sums and the windowed ratio functions behind the
//! closed-form threshold rules.

use churnmend::harmonic::{partial_harmonic, ratio_f, ratio_g, IndexPair};
use proptest::prelude::*;

/// Absolute slack absorbing f64 rounding when asserting inequalities
/// that are strict in exact arithmetic.
const SLACK: f64 = 1e-12;

fn h(upper: u32, lower: u32) -> f64 {
    partial_harmonic(IndexPair::new(upper, lower).unwrap())
}

#[test]
fn empty_window_sums_to_zero() {
    assert_eq!(h(30, 30), 0.0);
    assert_eq!(h(0, 0), 0.0);
    assert_eq!(h(1, 1), 0.0);
}

#[test]
fn small_windows_match_hand_sums() {
    assert!((h(4, 2) - (1.0 / 3.0 + 1.0 / 4.0)).abs() < SLACK);
    assert!((h(1, 0) - 1.0).abs() < SLACK);
    // Window used throughout the reference tables.
    assert!((h(29, 25) - 0.145_695_619_833_551).abs() < 1e-12);
    assert!((h(30, 25) - 0.179_028_953_166_884).abs() < 1e-12);
}

#[test]
fn inverted_pairs_are_rejected() {
    assert!(IndexPair::new(2, 4).is_err());
    assert!(IndexPair::new(0, 1).is_err());
    let pair = IndexPair::new(7, 3).unwrap();
    assert_eq!((pair.upper(), pair.lower()), (7, 3));
}

#[test]
fn ratio_examples_match_hand_values() {
    assert!((ratio_f(2, 1).unwrap() - 1.0 / 3.0).abs() < SLACK);
    assert!((ratio_f(2, 2).unwrap() - (1.0 / 3.0 + 1.0 / 4.0) / 2.0).abs() < SLACK);
    assert!((ratio_g(3, 1).unwrap() - 1.0 / 3.0).abs() < SLACK);
    assert!((ratio_g(3, 2).unwrap() - (1.0 / 2.0 + 1.0 / 3.0) / 2.0).abs() < SLACK);
}

#[test]
fn ratio_domains_are_enforced() {
    // f needs x >= 1, delta >= 1.
    assert!(ratio_f(0, 1).is_err());
    assert!(ratio_f(2, 0).is_err());
    // g needs 1 <= delta <= x-1.
    assert!(ratio_g(3, 3).is_err());
    assert!(ratio_g(3, 0).is_err());
    assert!(ratio_g(0, 1).is_err());
    assert!(ratio_g(3, 2).is_ok());
}

#[test]
fn forward_ratio_is_sandwiched() {
    // 1/(x+delta) <= f(x, delta) < 1/x on the full small-parameter grid.
    for x in 1..=100u32 {
        for delta in 1..=100u32 {
            let f = ratio_f(x, delta).unwrap();
            let lo = 1.0 / f64::from(x + delta);
            let hi = 1.0 / f64::from(x);
            assert!(f >= lo - SLACK, "f({x},{delta})={f} below {lo}");
            assert!(f < hi + SLACK, "f({x},{delta})={f} not below {hi}");
        }
    }
}

proptest! {
    #[test]
    fn adjacent_windows_telescope(a in 0u32..2000, b in 0u32..2000, c in 0u32..2000) {
        let mut v = [a, b, c];
        v.sort_unstable();
        let [lo, mid, hi] = v;
        let whole = h(hi, lo);
        let split = h(hi, mid) + h(mid, lo);
        // Relative tolerance: windows here hold up to 2000 terms.
        prop_assert!((whole - split).abs() <= 1e-12 * whole.max(1.0));
    }

    #[test]
    fn forward_ratio_strictly_decreases_in_window(
        x in 1u32..500,
        d1 in 1u32..100,
        extra in 1u32..100,
    ) {
        let wide = ratio_f(x, d1 + extra).unwrap();
        let narrow = ratio_f(x, d1).unwrap();
        prop_assert!(wide < narrow + SLACK, "f({x},{}) >= f({x},{d1})", d1 + extra);
    }

    #[test]
    fn backward_ratio_strictly_increases_in_window(
        x in 3u32..500,
        d1 in 1u32..100,
        extra in 1u32..100,
    ) {
        prop_assume!(d1 + extra <= x - 1);
        let wide = ratio_g(x, d1 + extra).unwrap();
        let narrow = ratio_g(x, d1).unwrap();
        prop_assert!(wide > narrow - SLACK, "g({x},{}) <= g({x},{d1})", d1 + extra);
    }

    #[test]
    fn sums_are_positive_and_monotone(upper in 1u32..3000, lower in 0u32..3000) {
        prop_assume!(lower < upper);
        let sum = h(upper, lower);
        prop_assert!(sum > 0.0);
        // Widening the window on either side only adds positive terms.
        prop_assert!(h(upper + 1, lower) > sum);
        if lower > 0 {
            prop_assert!(h(upper, lower - 1) > sum);
        }
    }
}
