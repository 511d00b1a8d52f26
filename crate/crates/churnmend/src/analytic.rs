//! Closed-form repair costs `c(tau)` and average repair cost per unit
//! time `r(tau)` for every strategy and clock model.
//!
//! The maintenance process is cyclic: starting from full strength `n`,
//! nodes depart one at a time (state `i` departs at rate `i*lambda`)
//! until only `tau` remain, at which point all `n - tau` missing nodes
//! are repaired in one batch. A cycle's expected length is therefore the
//! descent time `H(n, tau)/lambda` plus the repair duration, and the
//! average cost rate is the per-cycle repair cost divided by the expected
//! cycle length.
//!
//! Repairs come in two prices. With at least `d` live nodes a fragment is
//! regenerated for `gamma` symbols; below `d`, a repair must fall back to
//! reconstructing from `k` fragments at `k * alpha` symbols. Distributed
//! repair pays per node; centralized repair pays one reconstruction at
//! the leader plus one `alpha`-sized transfer per remaining newcomer.

use crate::codes::{
    mbcr_point, mbmr_point, mscr_point, msmr_point, ChurnParams, ClockModel, CodeParams, Family,
    OperatingPoint, Strategy,
};
use crate::error::{Error, Result};
use crate::harmonic::psum;

/// Per-cycle repair cost split by repair type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    /// Total repair cost `c(tau)` in symbols.
    pub total: f64,
    /// Nodes repaired by reconstruction (cost `k*alpha` each).
    pub reconstruction_repairs: u32,
    /// Nodes repaired by regeneration or redistribution (cost `gamma`
    /// each for distributed repair, `alpha` each for centralized).
    pub regeneration_repairs: u32,
}

/// One point of a cost-rate curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    /// Repair threshold.
    pub tau: u32,
    /// Per-cycle repair cost in symbols.
    pub cost: f64,
    /// Expected cycle length in time units.
    pub cycle_time: f64,
    /// Average cost per unit time; always exactly `cost / cycle_time`.
    pub cost_rate: f64,
}

impl RatePoint {
    fn assemble(tau: u32, cost: f64, cycle_time: f64) -> Self {
        Self { tau, cost, cycle_time, cost_rate: cost / cycle_time }
    }
}

/// Thresholds below `k` lose the data; above `n-1` there is nothing to
/// repair. `lo` lets cooperative callers tighten the window to `d`.
fn validate_tau(p: &CodeParams, tau: u32, lo: u32) -> Result<()> {
    if tau < lo || tau > p.n() - 1 {
        return Err(Error::TauRange { tau, lo, hi: p.n() - 1 });
    }
    Ok(())
}

/// Per-cycle cost of distributed repair at threshold `tau`.
///
/// For `tau < d` the `d - tau` repairs that run below `d` live nodes pay
/// reconstruction price; the rest regenerate. For `tau >= d` all `n - tau`
/// repairs regenerate.
pub fn distributed_cost(p: &CodeParams, op: &OperatingPoint, tau: u32) -> Result<CostBreakdown> {
    validate_tau(p, tau, p.k())?;
    let (n, k, d) = (p.n(), p.k(), p.d());
    let (recon, regen) = if tau < d { (d - tau, n - d) } else { (0, n - tau) };
    let total = f64::from(k) * op.alpha * f64::from(recon) + op.gamma * f64::from(regen);
    Ok(CostBreakdown { total, reconstruction_repairs: recon, regeneration_repairs: regen })
}

/// Per-cycle cost of centralized repair at threshold `tau`:
/// `alpha * (k + n - tau - 1)`.
///
/// The leader reconstructs once (k downloads of `alpha`) and then sends
/// one fresh fragment to each of the other `n - tau - 1` newcomers. The
/// breakdown counts the leader's own repair as the single reconstruction.
pub fn centralized_cost(p: &CodeParams, op: &OperatingPoint, tau: u32) -> Result<CostBreakdown> {
    validate_tau(p, tau, p.k())?;
    let (n, k) = (p.n(), p.k());
    let total = op.alpha * f64::from(k + n - tau - 1);
    Ok(CostBreakdown {
        total,
        reconstruction_repairs: 1,
        regeneration_repairs: n - tau - 1,
    })
}

/// Expected cycle length `E[Delta]` for the threshold process.
///
/// Fixed clock: `H(n,tau)/lambda + 1/mu`. Node-dependent clocks finish at
/// the slowest of the batch: distributed repair waits the maximum of
/// `n - tau` clocks (`H(n-tau, 0)/mu`); centralized repair first waits
/// the leader's clock, then the maximum of the remaining `n - tau - 1`.
/// The failures-during-repair model is handled exactly by the chain
/// module and is rejected here.
pub fn expected_cycle_time(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    model: ClockModel,
    strategy: Strategy,
) -> Result<f64> {
    validate_tau(p, tau, p.k())?;
    let descent = psum(p.n(), tau) / churn.lambda();
    let repair = match model {
        ClockModel::Fixed => 1.0 / churn.mu(),
        ClockModel::NodeDependent => match strategy {
            Strategy::Distributed => psum(p.n() - tau, 0) / churn.mu(),
            Strategy::Centralized => (1.0 + psum(p.n() - tau - 1, 0)) / churn.mu(),
        },
        ClockModel::FailuresDuringRepair => {
            return Err(Error::ModelContext {
                model,
                context: "expected_cycle_time (use the chain solver)",
            })
        }
    };
    Ok(descent + repair)
}

/// Average cost rate of distributed repair under the fixed clock.
pub fn rate_distributed(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
    tau: u32,
) -> Result<RatePoint> {
    let cost = distributed_cost(p, op, tau)?.total;
    let cycle = expected_cycle_time(p, churn, tau, ClockModel::Fixed, Strategy::Distributed)?;
    Ok(RatePoint::assemble(tau, cost, cycle))
}

/// Average cost rate of centralized repair under the fixed clock.
pub fn rate_centralized(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
    tau: u32,
) -> Result<RatePoint> {
    let cost = centralized_cost(p, op, tau)?.total;
    let cycle = expected_cycle_time(p, churn, tau, ClockModel::Fixed, Strategy::Centralized)?;
    Ok(RatePoint::assemble(tau, cost, cycle))
}

/// Average cost rate of cooperative repair with full cooperation
/// (`t = n - tau`), the group size that minimizes the rate.
///
/// Cooperative repair needs `d` live helpers for the whole group, so the
/// threshold window tightens to `d <= tau <= n-1`.
pub fn rate_cooperative(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    family: Family,
) -> Result<RatePoint> {
    validate_tau(p, tau, p.d())?;
    rate_cooperative_at(p, churn, tau, p.n() - tau, family)
}

/// Average cost rate of cooperative repair with groups of `t` newcomers.
///
/// The `n - tau` departed nodes are repaired in batches of `t`, so `t`
/// must divide `n - tau`; every batch pays `t * gamma_t` symbols for a
/// per-cycle cost of `gamma_t * (n - tau)`.
pub fn rate_cooperative_at(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    t: u32,
    family: Family,
) -> Result<RatePoint> {
    validate_tau(p, tau, p.d())?;
    let missing = p.n() - tau;
    if t == 0 || missing % t != 0 {
        return Err(Error::GroupDivisor { t, missing });
    }
    let op = match family {
        Family::Mscr => mscr_point(p, t)?,
        Family::Mbcr => mbcr_point(p, t)?,
        other => {
            return Err(Error::FamilyContext { family: other, context: "rate_cooperative" })
        }
    };
    let cost = op.gamma * f64::from(missing);
    let cycle = expected_cycle_time(p, churn, tau, ClockModel::Fixed, Strategy::Distributed)?;
    Ok(RatePoint::assemble(tau, cost, cycle))
}

/// Average cost rate of leader-based multi-node repair: the leader
/// regenerates the whole batch for `gamma` symbols and distributes
/// `alpha` to each of the other `n - tau - 1` newcomers.
pub fn rate_centralized_multinode(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    family: Family,
) -> Result<RatePoint> {
    validate_tau(p, tau, p.d())?;
    let t = p.n() - tau;
    let op = match family {
        Family::Msmr => msmr_point(p, t)?,
        Family::Mbmr => mbmr_point(p, t)?,
        other => {
            return Err(Error::FamilyContext {
                family: other,
                context: "rate_centralized_multinode",
            })
        }
    };
    let cost = op.gamma + op.alpha * f64::from(t - 1);
    let cycle = expected_cycle_time(p, churn, tau, ClockModel::Fixed, Strategy::Centralized)?;
    Ok(RatePoint::assemble(tau, cost, cycle))
}

/// Average cost rate under node-dependent repair clocks.
///
/// Costs are unchanged from the fixed-clock strategy; only the cycle
/// grows by the slowest-clock wait, so the rate drops slightly.
pub fn rate_node_dependent(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
    tau: u32,
    strategy: Strategy,
) -> Result<RatePoint> {
    let cost = match strategy {
        Strategy::Distributed => distributed_cost(p, op, tau)?.total,
        Strategy::Centralized => centralized_cost(p, op, tau)?.total,
    };
    let cycle = expected_cycle_time(p, churn, tau, ClockModel::NodeDependent, strategy)?;
    Ok(RatePoint::assemble(tau, cost, cycle))
}
