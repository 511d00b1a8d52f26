//! Optimal repair-threshold selection, churn-regime classification, and
//! strategy dominance conditions.
//!
//! Because per-cycle cost falls with `tau` while cycles shorten, the cost
//! rate `r(tau)` is quasi-monotone on each repair regime and its minimum
//! always lands on an interval endpoint. Each `optimal_tau_*` operation
//! returns that endpoint together with the churn boundary `rho_bound` at
//! which the answer flips: lazy repair (defer to the window's lower end)
//! wins for `rho <= rho_bound`, eager repair (`tau = n-1`) wins above it.
//! At exact equality the lazy threshold is returned.
//!
//! `numeric_argmin` is the fallback for curves without a closed-form
//! optimum, and `best_strategy` ranks the four single-node schemes.

use crate::analytic::{rate_centralized, rate_distributed, RatePoint};
use crate::codes::{
    mbr_point, msr_point, ChurnParams, ClockModel, CodeParams, Family, OperatingPoint,
    RepairScheme, Strategy,
};
use crate::error::{Error, Result};
use crate::harmonic::psum;

/// Which repair policy a threshold decision selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Defer repair to the window's lower end (`d`, or `k` for
    /// centralized repair).
    Lazy,
    /// Repair every departure immediately (`tau = n-1`).
    Eager,
    /// Defer past `d` into reconstruction territory (`tau = k`).
    HybridReconstruction,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Lazy => "lazy",
            Regime::Eager => "eager",
            Regime::HybridReconstruction => "hybrid-reconstruction",
        })
    }
}

/// Where a threshold decision came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// An endpoint comparison with a closed-form churn boundary.
    ClosedForm,
    /// A numeric scan of the rate curve.
    NumericScan,
}

/// An optimal threshold plus the churn boundary that selected it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdDecision {
    /// The minimizing repair threshold.
    pub optimal_tau: u32,
    /// Churn ratio at which the optimum flips (lazy at or below, eager
    /// above). May be negative, meaning no positive churn picks the lazy
    /// endpoint.
    pub rho_bound: f64,
    /// Policy the chosen threshold corresponds to.
    pub regime: Regime,
    /// Closed form or numeric scan.
    pub basis: Basis,
}

/// Optimal threshold for distributed repair restricted to the
/// regeneration window `d <= tau <= n-1`.
///
/// `tau* = d` iff `rho <= H(n-1, d)/(n-d-1) - 1/n`, else `tau* = n-1`.
/// When `d = n-1` the window is a single point; it is returned with
/// regime eager and a zero bound.
pub fn optimal_tau_regeneration(p: &CodeParams, churn: &ChurnParams) -> Result<ThresholdDecision> {
    let (n, d) = (p.n(), p.d());
    if d == n - 1 {
        return Ok(ThresholdDecision {
            optimal_tau: n - 1,
            rho_bound: 0.0,
            regime: Regime::Eager,
            basis: Basis::ClosedForm,
        });
    }
    let bound = psum(n - 1, d) / f64::from(n - d - 1) - 1.0 / f64::from(n);
    let lazy = churn.rho() <= bound;
    Ok(ThresholdDecision {
        optimal_tau: if lazy { d } else { n - 1 },
        rho_bound: bound,
        regime: if lazy { Regime::Lazy } else { Regime::Eager },
        basis: Basis::ClosedForm,
    })
}

/// Whether the regeneration-window lazy bound is strictly positive.
///
/// It is, for every valid `(n, d)` with `n > d+1`: the harmonic window
/// average `H(n-1, d)/(n-d-1)` always exceeds `1/n`. Exposed so the
/// guarantee can be swept explicitly.
pub fn lazy_bound_positive(p: &CodeParams) -> Result<bool> {
    let (n, d) = (p.n(), p.d());
    if n <= d + 1 {
        return Err(Error::Degenerate("lazy bound needs n > d+1"));
    }
    Ok(psum(n - 1, d) / f64::from(n - d - 1) - 1.0 / f64::from(n) > 0.0)
}

/// Optimal threshold for distributed repair restricted to the hybrid
/// window `k <= tau <= d`, where repairs below `d` pay reconstruction
/// price.
///
/// `tau* = k` iff `rho <= gamma (n-d) H(d,k) / (k alpha (d-k)) - H(n,d)`,
/// else `tau* = d`. The bound may be negative: then `tau* = d` for every
/// positive churn (see [`regeneration_dominates`]).
pub fn optimal_tau_hybrid(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
) -> Result<ThresholdDecision> {
    let (n, k, d) = (p.n(), p.k(), p.d());
    if k == d {
        return Err(Error::Degenerate("hybrid window needs k < d"));
    }
    let bound = op.gamma * f64::from(n - d) * psum(d, k)
        / (f64::from(k) * op.alpha * f64::from(d - k))
        - psum(n, d);
    let reconstruct = churn.rho() <= bound;
    Ok(ThresholdDecision {
        optimal_tau: if reconstruct { k } else { d },
        rho_bound: bound,
        regime: if reconstruct { Regime::HybridReconstruction } else { Regime::Lazy },
        basis: Basis::ClosedForm,
    })
}

/// Whether `n * gamma < k^2 * alpha` holds, a sufficient condition for
/// pure regeneration to beat regeneration-plus-reconstruction at every
/// churn level (it forces the [`optimal_tau_hybrid`] boundary negative;
/// the converse can fail, since the boundary uses the exact harmonic
/// window where this test uses its bounds).
///
/// At the minimum-storage point the condition reduces to
/// `d*n < k^2 (d-k+1)`; at the minimum-bandwidth point, to `n < k^2`.
pub fn regeneration_dominates(p: &CodeParams, op: &OperatingPoint) -> bool {
    f64::from(p.n()) * op.gamma < f64::from(p.k()) * f64::from(p.k()) * op.alpha
}

/// Optimal threshold for centralized repair over `k <= tau <= n-1`.
///
/// `tau* = k` iff `rho <= k H(n-1, k)/(n-k-1) - 1/n`, else `tau* = n-1`.
/// That bound is strictly positive for every valid code. The window needs
/// two candidates, so `n = k+1` is rejected.
pub fn optimal_tau_centralized(p: &CodeParams, churn: &ChurnParams) -> Result<ThresholdDecision> {
    let (n, k) = (p.n(), p.k());
    if n == k + 1 {
        return Err(Error::Degenerate("centralized window needs n > k+1"));
    }
    let bound = f64::from(k) * psum(n - 1, k) / f64::from(n - k - 1) - 1.0 / f64::from(n);
    let lazy = churn.rho() <= bound;
    Ok(ThresholdDecision {
        optimal_tau: if lazy { k } else { n - 1 },
        rho_bound: bound,
        regime: if lazy { Regime::Lazy } else { Regime::Eager },
        basis: Basis::ClosedForm,
    })
}

/// Churn-regime classification produced by [`rho_regimes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoRegime {
    /// Every scheme's optimum is its lazy endpoint.
    Lazy,
    /// Scheme-dependent; resolve by numeric scan.
    Mixed,
    /// Every scheme's optimum is eager repair.
    Eager,
}

impl std::fmt::Display for RhoRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RhoRegime::Lazy => "lazy",
            RhoRegime::Mixed => "mixed",
            RhoRegime::Eager => "eager",
        })
    }
}

/// The two churn boundaries delimiting the universally-lazy and
/// universally-eager regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoRegimes {
    /// Below (or at) this ratio, lazy repair is optimal for every scheme.
    pub rho_low: f64,
    /// Above this ratio, eager repair is optimal for every scheme.
    pub rho_high: f64,
}

impl RhoRegimes {
    /// Classifies a churn ratio against the two boundaries.
    pub fn classify(&self, rho: f64) -> RhoRegime {
        if rho <= self.rho_low {
            RhoRegime::Lazy
        } else if rho > self.rho_high {
            RhoRegime::Eager
        } else {
            RhoRegime::Mixed
        }
    }
}

/// Regime boundaries across the four single-node schemes.
///
/// The hybrid-window bound depends on the operating point, so it is
/// evaluated at both supplied extremes and the envelope taken:
/// `rho_low` is the min of the regeneration-window bound and both hybrid
/// bounds, `rho_high` the max of both hybrid bounds and the centralized
/// bound. Requires `k < d < n-1` so all three windows are non-degenerate.
pub fn rho_regimes(
    p: &CodeParams,
    op_msr: &OperatingPoint,
    op_mbr: &OperatingPoint,
) -> Result<RhoRegimes> {
    let (n, k, d) = (p.n(), p.k(), p.d());
    if !(k < d && d < n - 1) {
        return Err(Error::Degenerate("regime bounds need k < d < n-1"));
    }
    let hybrid = |op: &OperatingPoint| {
        op.gamma * f64::from(n - d) * psum(d, k) / (f64::from(k) * op.alpha * f64::from(d - k))
            - psum(n, d)
    };
    let regen = psum(n - 1, d) / f64::from(n - d - 1) - 1.0 / f64::from(n);
    let central = f64::from(k) * psum(n - 1, k) / f64::from(n - k - 1) - 1.0 / f64::from(n);
    let (h_msr, h_mbr) = (hybrid(op_msr), hybrid(op_mbr));
    Ok(RhoRegimes {
        rho_low: regen.min(h_msr).min(h_mbr),
        rho_high: h_msr.max(h_mbr).max(central),
    })
}

/// Tolerance for the internal dominance cross-checks in
/// [`best_strategy`]: orderings proved non-strict may tie to rounding.
const DOMINANCE_SLACK: f64 = 1e-9;

/// Evaluates the four single-node schemes (distributed and centralized,
/// at both tradeoff extremes) over `taus` and returns every point ranked
/// by cost rate, cheapest first.
///
/// Ties keep evaluation order: D-MSR, D-MBR, C-MSR, C-MBR per threshold,
/// thresholds in the order given. Every threshold must lie in
/// `[k, n-1]`. Debug builds cross-check two dominance guarantees while
/// ranking: below `d`, centralized minimum-storage repair is cheapest;
/// at or above `d`, distributed minimum-bandwidth repair is cheapest
/// whenever `d > (n+k-1)/3`.
pub fn best_strategy(
    p: &CodeParams,
    churn: &ChurnParams,
    taus: &[u32],
) -> Result<Vec<(RepairScheme, RatePoint)>> {
    if taus.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let msr = msr_point(p);
    let mbr = mbr_point(p);
    let mut out = Vec::with_capacity(taus.len() * 4);
    for &tau in taus {
        let d_msr = rate_distributed(p, &msr, churn, tau)?;
        let d_mbr = rate_distributed(p, &mbr, churn, tau)?;
        let c_msr = rate_centralized(p, &msr, churn, tau)?;
        let c_mbr = rate_centralized(p, &mbr, churn, tau)?;
        if tau < p.d() {
            debug_assert!(
                c_msr.cost_rate
                    <= d_msr.cost_rate.min(d_mbr.cost_rate).min(c_mbr.cost_rate)
                        + DOMINANCE_SLACK * c_msr.cost_rate,
                "C-MSR must be cheapest below d"
            );
        } else if 3 * p.d() > p.n() + p.k() - 1 {
            debug_assert!(
                d_mbr.cost_rate <= c_msr.cost_rate + DOMINANCE_SLACK * c_msr.cost_rate,
                "D-MBR must not exceed C-MSR at or above d when d > (n+k-1)/3"
            );
        }
        let fixed = ClockModel::Fixed;
        out.push((RepairScheme::new(Family::Msr, Strategy::Distributed, fixed)?, d_msr));
        out.push((RepairScheme::new(Family::Mbr, Strategy::Distributed, fixed)?, d_mbr));
        out.push((RepairScheme::new(Family::Msr, Strategy::Centralized, fixed)?, c_msr));
        out.push((RepairScheme::new(Family::Mbr, Strategy::Centralized, fixed)?, c_mbr));
    }
    out.sort_by(|a, b| a.1.cost_rate.total_cmp(&b.1.cost_rate));
    Ok(out)
}

/// Returns the `(tau, rate)` pair minimizing the curve; exact ties break
/// toward the smaller threshold (fewer repair cycles).
pub fn numeric_argmin(curve: &[(u32, f64)]) -> Result<(u32, f64)> {
    let mut best: Option<(u32, f64)> = None;
    for &(tau, rate) in curve {
        best = Some(match best {
            None => (tau, rate),
            Some((bt, br)) => {
                if rate < br || (rate == br && tau < bt) {
                    (tau, rate)
                } else {
                    (bt, br)
                }
            }
        });
    }
    best.ok_or(Error::EmptyCurve)
}
