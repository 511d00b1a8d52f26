//! Mean time to data loss (MTTDL) for the periodic threshold-repair
//! process, under both repair-clock models.
//!
//! Data-loss convention: when the process sits at the threshold `tau`, a
//! repair attempt races the next departure. If the departure wins, the
//! attempt is abandoned and the system drifts unrepaired from `tau` down
//! to `k-1`, at which point the file is unrecoverable. Repair is NOT
//! re-initiated during the drift; this makes the figure conservative
//! relative to a retrying operator and is the convention all formulas
//! here follow.
//!
//! Each cycle ends in loss with probability `p`, so the number of cycles
//! is geometric with mean `1/p` and the closed forms below are the
//! geometric series evaluated exactly: descent time `H(n,tau)/lambda`
//! every cycle, a repair wait on each surviving cycle, and one final
//! drift `H(tau, k-1)/lambda`.

use crate::codes::{ChurnParams, CodeParams};
use crate::error::{Error, Result};
use crate::harmonic::psum;

/// MTTDL together with its per-cycle ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MttdlResult {
    /// Mean time to data loss, in time units.
    pub mttdl: f64,
    /// Probability a given cycle ends in loss.
    pub per_cycle_loss_prob: f64,
    /// Expected number of cycles until loss, `1 / per_cycle_loss_prob`.
    pub expected_cycles: f64,
}

fn validate(p: &CodeParams, tau: u32) -> Result<()> {
    if tau < p.k() || tau > p.n() - 1 {
        return Err(Error::TauRange { tau, lo: p.k(), hi: p.n() - 1 });
    }
    Ok(())
}

/// MTTDL under the fixed repair clock.
///
/// Loss probability is the single race `p = tau*lambda / (tau*lambda + mu)`,
/// giving `MTTDL = H(n,tau)/(lambda p) + (1-p)/(p mu) + H(tau,k-1)/lambda`.
/// Strictly decreasing in `tau` for every churn level: eager repair
/// maximizes reliability even though it also maximizes cost.
pub fn mttdl_fixed(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<MttdlResult> {
    validate(p, tau)?;
    let (lambda, mu) = (churn.lambda(), churn.mu());
    let tl = f64::from(tau) * lambda;
    let loss = tl / (tl + mu);
    let mttdl = psum(p.n(), tau) / (lambda * loss)
        + (1.0 - loss) / (loss * mu)
        + psum(tau, p.k() - 1) / lambda;
    Ok(MttdlResult { mttdl, per_cycle_loss_prob: loss, expected_cycles: 1.0 / loss })
}

/// MTTDL under node-dependent repair clocks, distributed repair only.
///
/// A cycle survives only if every one of the `n - tau` per-node repairs
/// beats the next departure, so
/// `p = 1 - (mu / (tau*lambda + mu))^(n-tau)` and the surviving-cycle
/// repair wait is the slowest clock, `H(n-tau, 0)/mu`:
/// `MTTDL = H(n,tau)/(lambda p) + (1-p) H(n-tau,0)/(p mu) + H(tau,k-1)/lambda`.
///
/// Never exceeds [`mttdl_fixed`] at the same parameters, and equals it at
/// `tau = n-1`. Centralized repair has no counterpart here: its batch
/// completion is not a per-node race, so this operation models the
/// distributed strategy only.
pub fn mttdl_node_dependent(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<MttdlResult> {
    validate(p, tau)?;
    let (lambda, mu) = (churn.lambda(), churn.mu());
    let tl = f64::from(tau) * lambda;
    let survive_one = mu / (tl + mu);
    let loss = 1.0 - survive_one.powi((p.n() - tau) as i32);
    let mttdl = psum(p.n(), tau) / (lambda * loss)
        + (1.0 - loss) * psum(p.n() - tau, 0) / (loss * mu)
        + psum(tau, p.k() - 1) / lambda;
    Ok(MttdlResult { mttdl, per_cycle_loss_prob: loss, expected_cycles: 1.0 / loss })
}
