//! Exact solver for the repair-phase chain in which nodes keep departing
//! while per-node repairs are running.
//!
//! A maintenance cycle starts at full strength `n`, descends to the
//! threshold `tau` (state `i` departs at rate `i*lambda`), and then enters
//! a repair phase on the states `tau..=n-1`: at state `j`, the next
//! departure (rate `j*lambda`) races the next repair completion (rate
//! `(n-j)*mu`, one clock per missing node). At the threshold itself the
//! system always takes the upward transition; the would-be losing race is
//! instead accounted by [`ChainSolution::no_loss_prob`]. The cycle ends
//! when the phase reaches state `n`.
//!
//! Four first-step systems over that phase are solved exactly: expected
//! arrivals at the threshold state, expected repairs (total and the share
//! performed below `d` live nodes, which pay reconstruction price
//! `k*alpha` instead of `gamma`), and expected phase duration. Each
//! system is tridiagonal in the state index and is eliminated directly in
//! O(n); the returned quantities fold in the descent so they describe the
//! whole cycle.

use crate::codes::{ChurnParams, CodeParams, OperatingPoint};
use crate::error::{Error, Result};
use crate::harmonic::psum;

/// Everything the chain yields at one `(code, churn, tau)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSolution {
    /// Expected arrivals at the threshold state per cycle, counting the
    /// arrival that triggers repair; always at least 1.
    pub revisits_at_tau: f64,
    /// Expected node repairs per cycle; at least `n - tau`.
    pub lower_arc_total: f64,
    /// Expected repairs performed with fewer than `d` live nodes (each
    /// paying `k*alpha`); 0 when `tau >= d`.
    pub lower_arc_below_d: f64,
    /// Expected cycle duration: descent plus repair phase.
    pub time_to_full: f64,
    /// Probability the cycle would finish without data loss, i.e. that
    /// the forced upward transition would have won every race at the
    /// threshold: `q^revisits` with `q = (n-tau)mu / (tau*lambda + (n-tau)mu)`.
    /// Uses the expected arrival count in the exponent (an approximation
    /// over the random count; simulation reports the exact frequency
    /// separately).
    pub no_loss_prob: f64,
    /// Expected repair cost per cycle divided by expected cycle duration.
    pub conditional_cost_rate: f64,
}

/// Which first-step system to solve. Unknowns are indexed by the phase
/// states `tau..=n-1`; the target state `n` contributes zero.
#[derive(Clone, Copy)]
enum System {
    /// Arrivals at the threshold state after the first: increments on
    /// every `tau+1 -> tau` transition.
    Revisits,
    /// Upward (repair) transitions: increments on every up-arc.
    Arcs,
    /// Upward transitions from states below `d` only.
    ArcsBelowD(u32),
    /// Phase duration: each state contributes its expected sojourn.
    Time,
}

impl System {
    /// Boundary increment at the threshold state, whose transition is
    /// always upward.
    fn boundary(self, n: u32, tau: u32, mu: f64) -> f64 {
        match self {
            System::Revisits => 0.0,
            System::Arcs => 1.0,
            System::ArcsBelowD(d) => {
                if tau < d {
                    1.0
                } else {
                    0.0
                }
            }
            System::Time => 1.0 / (f64::from(n - tau) * mu),
        }
    }

    /// Per-state increment at an interior state `j` with splitting
    /// probabilities `up`/`down` and total rate `total`.
    fn increment(self, j: u32, tau: u32, up: f64, down: f64, total: f64) -> f64 {
        match self {
            System::Revisits => {
                if j == tau + 1 {
                    down
                } else {
                    0.0
                }
            }
            System::Arcs => up,
            System::ArcsBelowD(d) => {
                if j < d {
                    up
                } else {
                    0.0
                }
            }
            System::Time => 1.0 / total,
        }
    }
}

/// Solves one first-step system and returns the per-state vector for
/// states `tau..=n-1` (index 0 is the threshold state).
///
/// The equations are `X_j = A_j + up_j X_{j+1} + down_j X_{j-1}` for
/// interior `j`, with `X_n = 0` and the forced boundary
/// `X_tau = B + X_{tau+1}`. Substituting the boundary turns the system
/// strictly tridiagonal; a forward elimination expressing
/// `X_j = p_j + q_j X_{j+1}` followed by back-substitution solves it in
/// O(n). Positive rates keep every pivot in (0, 1], so the sweep cannot
/// encounter a zero pivot.
fn solve_lower_row(n: u32, tau: u32, lambda: f64, mu: f64, sys: System) -> Vec<f64> {
    let m = (n - tau) as usize;
    let b = sys.boundary(n, tau, mu);
    if m == 1 {
        return vec![b];
    }
    // Forward sweep over interior states tau+1..=n-1; slot j - (tau+1).
    let mut p = vec![0.0_f64; m - 1];
    let mut q = vec![0.0_f64; m - 1];
    for j in tau + 1..n {
        let total = f64::from(j) * lambda + f64::from(n - j) * mu;
        let up = f64::from(n - j) * mu / total;
        let down = f64::from(j) * lambda / total;
        let a = sys.increment(j, tau, up, down, total);
        let s = (j - tau - 1) as usize;
        let (num, den) = if j == tau + 1 {
            (a + down * b, 1.0 - down)
        } else {
            (a + down * p[s - 1], 1.0 - down * q[s - 1])
        };
        p[s] = num / den;
        q[s] = up / den;
    }
    let mut x = vec![0.0_f64; m];
    x[m - 1] = p[m - 2];
    for j in (tau + 1..n - 1).rev() {
        let s = (j - tau - 1) as usize;
        x[(j - tau) as usize] = p[s] + q[s] * x[(j - tau + 1) as usize];
    }
    x[0] = b + x[1];
    x
}

fn validate(p: &CodeParams, tau: u32) -> Result<()> {
    if tau < p.k() || tau > p.n() - 1 {
        return Err(Error::TauRange { tau, lo: p.k(), hi: p.n() - 1 });
    }
    Ok(())
}

/// Expected arrivals at the threshold state per cycle, counting the
/// arrival that triggers repair. Tends to 1 as churn vanishes.
pub fn solve_revisits(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<f64> {
    validate(p, tau)?;
    let x = solve_lower_row(p.n(), tau, churn.lambda(), churn.mu(), System::Revisits);
    Ok(1.0 + x[0])
}

/// Expected node repairs per cycle. Tends to `n - tau` as churn
/// vanishes; departures during the phase only add repairs.
pub fn solve_lower_arcs(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<f64> {
    validate(p, tau)?;
    let x = solve_lower_row(p.n(), tau, churn.lambda(), churn.mu(), System::Arcs);
    Ok(x[0])
}

/// Expected repairs performed with fewer than `d` live nodes per cycle
/// (reconstruction-priced). Exactly 0 when `tau >= d`; tends to `d - tau`
/// as churn vanishes.
pub fn solve_lower_arcs_below_d(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<f64> {
    validate(p, tau)?;
    let x = solve_lower_row(
        p.n(),
        tau,
        churn.lambda(),
        churn.mu(),
        System::ArcsBelowD(p.d()),
    );
    Ok(x[0])
}

/// Expected cycle duration: the descent from full strength plus the
/// repair phase. Decreases as churn grows (the descent dominates).
pub fn solve_expected_time(p: &CodeParams, churn: &ChurnParams, tau: u32) -> Result<f64> {
    validate(p, tau)?;
    let x = solve_lower_row(p.n(), tau, churn.lambda(), churn.mu(), System::Time);
    Ok(x[0] + psum(p.n(), tau) / churn.lambda())
}

/// Solves all four systems and assembles the conditional cost rate: the
/// expected per-cycle repair cost (below-`d` repairs at `k*alpha`, the
/// rest at `gamma`) divided by the expected cycle duration.
pub fn conditional_cost_rate(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
    tau: u32,
) -> Result<ChainSolution> {
    validate(p, tau)?;
    let revisits = solve_revisits(p, churn, tau)?;
    let arcs = solve_lower_arcs(p, churn, tau)?;
    let below_d = solve_lower_arcs_below_d(p, churn, tau)?;
    let time = solve_expected_time(p, churn, tau)?;
    let (n, k, tau_f) = (f64::from(p.n()), f64::from(p.k()), f64::from(tau));
    let up_rate = (n - tau_f) * churn.mu();
    let survive = up_rate / (tau_f * churn.lambda() + up_rate);
    let cost = below_d * k * op.alpha + (arcs - below_d) * op.gamma;
    Ok(ChainSolution {
        revisits_at_tau: revisits,
        lower_arc_total: arcs,
        lower_arc_below_d: below_d,
        time_to_full: time,
        no_loss_prob: survive.powf(revisits),
        conditional_cost_rate: cost / time,
    })
}
