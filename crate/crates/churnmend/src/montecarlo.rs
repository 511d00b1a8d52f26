//! Seeded Monte Carlo verification of the closed forms and the chain
//! solver.
//!
//! Every trial owns a counter-seeded RNG stream (`base_seed` picks the
//! key, the trial index picks the stream), so results are reproducible
//! bit for bit: reruns with the same seed agree exactly, and the worker
//! thread count cannot change any estimate. Trials are processed in
//! fixed-size chunks whose partial sums are merged in index order.
//!
//! Three simulators are provided: cycle duration under the memoryless
//! and the per-node repair-clock models, the full repair-phase chain in
//! which departures interrupt running repairs, and time to data loss.
//! Estimates carry standard errors so callers can gate on z-scores.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;

use crate::codes::{ChurnParams, ClockModel, CodeParams, OperatingPoint, Strategy};
use crate::error::{Error, Result};

/// Trials per work unit. Partial sums are merged in chunk order, so the
/// split affects only scheduling, never the result.
const CHUNK: u64 = 16_384;

/// Which scalar a [`SimEstimate`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Expected cycle duration.
    CycleTime,
    /// Arrivals at the threshold state per cycle, first included.
    Revisits,
    /// Node repairs per cycle.
    RepairsTotal,
    /// Repairs performed below `d` live nodes (reconstruction-priced).
    RepairsKalpha,
    /// Repairs performed at or above `d` live nodes (bandwidth-priced).
    RepairsDbeta,
    /// Cycle duration including the repair phase of the interrupted
    /// chain.
    TimeToFull,
    /// Repair cost per unit time (ratio of per-cycle means).
    CostRate,
    /// Frequency of cycles in which every race at the threshold would
    /// have been won by a repair.
    NoLossFreq,
    /// Expected time to data loss.
    Mttdl,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Quantity::CycleTime => "cycle_time",
            Quantity::Revisits => "revisits",
            Quantity::RepairsTotal => "repairs_total",
            Quantity::RepairsKalpha => "repairs_kalpha",
            Quantity::RepairsDbeta => "repairs_dbeta",
            Quantity::TimeToFull => "time_to_full",
            Quantity::CostRate => "cost_rate",
            Quantity::NoLossFreq => "no_loss_freq",
            Quantity::Mttdl => "mttdl",
        };
        f.write_str(s)
    }
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    /// Sample mean over all trials.
    pub mean: f64,
    /// Standard error of the mean (delta method for [`Quantity::CostRate`]).
    pub std_error: f64,
    /// Number of trials behind the estimate.
    pub trials: u64,
    /// What the estimate measures.
    pub quantity: Quantity,
}

/// All estimates produced by one run of the interrupted-repair chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailuresEstimates {
    /// Arrivals at the threshold state per cycle, first included.
    pub revisits: SimEstimate,
    /// Cycle duration: descent plus interrupted repair phase.
    pub time_to_full: SimEstimate,
    /// Reconstruction-priced repairs per cycle.
    pub repairs_kalpha: SimEstimate,
    /// Bandwidth-priced repairs per cycle.
    pub repairs_dbeta: SimEstimate,
    /// All repairs per cycle.
    pub repairs_total: SimEstimate,
    /// Repair cost per unit time.
    pub cost_rate: SimEstimate,
    /// Frequency of loss-free cycles, Rao-Blackwellized over the race
    /// outcomes given the arrival count.
    pub no_loss_freq: SimEstimate,
}

/// How repair completions are drawn in the interrupted-repair chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairClocks {
    /// One memoryless completion race per state.
    Aggregate,
    /// A persistent absolute-time clock per missing node, started when
    /// its repair begins. Equivalent in distribution to [`RepairClocks::Aggregate`];
    /// kept as a cross-check of the memoryless reduction.
    PerNode,
}

/// Run parameters shared by all simulators.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    trials: u64,
    base_seed: u64,
    model: ClockModel,
    strategy: Strategy,
    clocks: RepairClocks,
}

impl SimConfig {
    /// Builds a configuration with aggregate repair clocks.
    pub fn new(trials: u64, base_seed: u64, model: ClockModel, strategy: Strategy) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Trials);
        }
        Ok(SimConfig { trials, base_seed, model, strategy, clocks: RepairClocks::Aggregate })
    }

    /// Switches the interrupted-repair chain to per-node repair clocks.
    pub fn with_per_node_clocks(mut self) -> Self {
        self.clocks = RepairClocks::PerNode;
        self
    }

    /// Number of trials.
    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Seed selecting the RNG key; trial indices select streams under it.
    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    /// Repair-duration model.
    pub fn model(&self) -> ClockModel {
        self.model
    }

    /// Repair strategy.
    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Clock bookkeeping for the interrupted-repair chain.
    pub fn clocks(&self) -> RepairClocks {
        self.clocks
    }
}

fn trial_rng(base_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(index);
    rng
}

fn draw_exp(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    debug_assert!(rate > 0.0);
    Exp::new(rate).expect("positive rate").sample(rng)
}

/// Time for the population to drain from `from` live nodes down to `to`.
fn descent_time(rng: &mut ChaCha8Rng, from: u32, to: u32, lambda: f64) -> f64 {
    let mut t = 0.0;
    for i in (to + 1..=from).rev() {
        t += draw_exp(rng, f64::from(i) * lambda);
    }
    t
}

/// Slowest of `count` unit-rate-`mu` repairs run in parallel.
fn slowest_of(rng: &mut ChaCha8Rng, count: u32, mu: f64) -> f64 {
    let mut worst = 0.0_f64;
    for _ in 0..count {
        worst = worst.max(draw_exp(rng, mu));
    }
    worst
}

#[derive(Default, Clone, Copy)]
struct Acc1 {
    n: u64,
    sum: f64,
    sumsq: f64,
}

impl Acc1 {
    fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sumsq += x * x;
    }

    fn merge(mut self, other: Acc1) -> Acc1 {
        self.n += other.n;
        self.sum += other.sum;
        self.sumsq += other.sumsq;
        self
    }

    fn estimate(&self, quantity: Quantity) -> SimEstimate {
        let n = self.n as f64;
        let mean = self.sum / n;
        let dof = (self.n - 1).max(1) as f64;
        let var = ((self.sumsq - self.sum * self.sum / n) / dof).max(0.0);
        SimEstimate { mean, std_error: (var / n).sqrt(), trials: self.n, quantity }
    }
}

/// Runs a scalar-valued trial over counter-seeded streams, chunked for
/// parallelism, and merges chunk sums in index order.
fn run_scalar<F>(trials: u64, base_seed: u64, quantity: Quantity, trial: F) -> SimEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    let partials: Vec<Acc1> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(trials);
            let mut acc = Acc1::default();
            for index in lo..hi {
                let mut rng = trial_rng(base_seed, index);
                acc.push(trial(&mut rng));
            }
            acc
        })
        .collect();
    partials.into_iter().fold(Acc1::default(), Acc1::merge).estimate(quantity)
}

fn validate_tau(p: &CodeParams, tau: u32) -> Result<()> {
    if tau < p.k() || tau > p.n() - 1 {
        return Err(Error::TauRange { tau, lo: p.k(), hi: p.n() - 1 });
    }
    Ok(())
}

/// Estimates the expected cycle duration under a closed-form repair
/// model: the descent to the threshold plus one repair phase.
///
/// Rejects [`ClockModel::FailuresDuringRepair`]; that phase is simulated
/// by [`simulate_failures_model`].
pub fn simulate_cycle_time(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    config: &SimConfig,
) -> Result<SimEstimate> {
    validate_tau(p, tau)?;
    let (n, lambda, mu) = (p.n(), churn.lambda(), churn.mu());
    let model = config.model();
    let strategy = config.strategy();
    if model == ClockModel::FailuresDuringRepair {
        return Err(Error::ModelContext {
            model,
            context: "closed-form cycle simulation (run simulate_failures_model)",
        });
    }
    let trial = move |rng: &mut ChaCha8Rng| {
        let descent = descent_time(rng, n, tau, lambda);
        let repair = match (model, strategy) {
            (ClockModel::Fixed, _) => draw_exp(rng, mu),
            (ClockModel::NodeDependent, Strategy::Distributed) => slowest_of(rng, n - tau, mu),
            (ClockModel::NodeDependent, Strategy::Centralized) => {
                draw_exp(rng, mu) + slowest_of(rng, n - tau - 1, mu)
            }
            (ClockModel::FailuresDuringRepair, _) => unreachable!("rejected above"),
        };
        descent + repair
    };
    Ok(run_scalar(config.trials(), config.base_seed(), Quantity::CycleTime, trial))
}

/// Estimates the expected time to data loss under the renewal
/// accounting of the closed forms: cycles of descent and repair repeat
/// until the repair race at the threshold is lost, after which the
/// population drifts to `k - 1` with no further repair attempt.
///
/// Phase durations are drawn unconditioned of the race outcome, exactly
/// as the closed forms weight them. Rejects
/// [`ClockModel::FailuresDuringRepair`]; the node-dependent model is
/// defined for distributed repair only.
pub fn simulate_mttdl(
    p: &CodeParams,
    churn: &ChurnParams,
    tau: u32,
    config: &SimConfig,
) -> Result<SimEstimate> {
    validate_tau(p, tau)?;
    let (n, k, lambda, mu) = (p.n(), p.k(), churn.lambda(), churn.mu());
    let model = config.model();
    match model {
        ClockModel::Fixed => {}
        ClockModel::NodeDependent => {
            if config.strategy() == Strategy::Centralized {
                return Err(Error::StrategyContext {
                    strategy: Strategy::Centralized,
                    context: "node-dependent time to data loss (defined for distributed repair)",
                });
            }
        }
        ClockModel::FailuresDuringRepair => {
            return Err(Error::ModelContext {
                model,
                context: "time-to-data-loss simulation (no closed form to verify)",
            });
        }
    }
    let tau_f = f64::from(tau);
    let survive_one = mu / (tau_f * lambda + mu);
    let loss_prob = match model {
        ClockModel::Fixed => tau_f * lambda / (tau_f * lambda + mu),
        ClockModel::NodeDependent => 1.0 - survive_one.powi((n - tau) as i32),
        ClockModel::FailuresDuringRepair => unreachable!("rejected above"),
    };
    let trial = move |rng: &mut ChaCha8Rng| {
        let mut t = 0.0;
        loop {
            t += descent_time(rng, n, tau, lambda);
            if rng.gen_bool(loss_prob) {
                t += descent_time(rng, tau, k - 1, lambda);
                return t;
            }
            t += match model {
                ClockModel::Fixed => draw_exp(rng, mu),
                ClockModel::NodeDependent => slowest_of(rng, n - tau, mu),
                ClockModel::FailuresDuringRepair => unreachable!("rejected above"),
            };
        }
    };
    Ok(run_scalar(config.trials(), config.base_seed(), Quantity::Mttdl, trial))
}

/// One cycle of the interrupted-repair chain: counts threshold
/// arrivals and repairs on each side of `d`, and accumulates the cycle
/// duration.
struct CycleTally {
    visits: u64,
    below_d: u64,
    at_or_above_d: u64,
    time: f64,
}

fn failures_trial_aggregate(
    rng: &mut ChaCha8Rng,
    n: u32,
    d: u32,
    tau: u32,
    lambda: f64,
    mu: f64,
) -> CycleTally {
    let mut time = descent_time(rng, n, tau, lambda);
    let mut visits = 1_u64;
    let mut below_d = 0_u64;
    let mut at_or_above_d = 0_u64;
    let mut j = tau;
    while j < n {
        if j == tau {
            // Forced repair: the race is settled by no_loss accounting.
            time += draw_exp(rng, f64::from(n - tau) * mu);
            if j < d {
                below_d += 1;
            } else {
                at_or_above_d += 1;
            }
            j += 1;
        } else {
            let down_rate = f64::from(j) * lambda;
            let up_rate = f64::from(n - j) * mu;
            time += draw_exp(rng, down_rate + up_rate);
            if rng.gen_bool(down_rate / (down_rate + up_rate)) {
                j -= 1;
                if j == tau {
                    visits += 1;
                }
            } else {
                if j < d {
                    below_d += 1;
                } else {
                    at_or_above_d += 1;
                }
                j += 1;
            }
        }
    }
    CycleTally { visits, below_d, at_or_above_d, time }
}

fn failures_trial_per_node(
    rng: &mut ChaCha8Rng,
    n: u32,
    d: u32,
    tau: u32,
    lambda: f64,
    mu: f64,
) -> CycleTally {
    let mut now = descent_time(rng, n, tau, lambda);
    // Repairs start only at the threshold; each missing node gets its
    // own absolute completion time. clocks.len() == n - j throughout.
    let mut clocks: Vec<f64> = (0..n - tau).map(|_| now + draw_exp(rng, mu)).collect();
    let mut visits = 1_u64;
    let mut below_d = 0_u64;
    let mut at_or_above_d = 0_u64;
    let mut j = tau;
    while j < n {
        let (slot, next_repair) = clocks
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("one clock per missing node");
        let departure = if j == tau {
            // Forced repair at the threshold.
            f64::INFINITY
        } else {
            now + draw_exp(rng, f64::from(j) * lambda)
        };
        if departure < next_repair {
            now = departure;
            clocks.push(now + draw_exp(rng, mu));
            j -= 1;
            if j == tau {
                visits += 1;
            }
        } else {
            now = next_repair;
            clocks.swap_remove(slot);
            if j < d {
                below_d += 1;
            } else {
                at_or_above_d += 1;
            }
            j += 1;
        }
    }
    CycleTally { visits, below_d, at_or_above_d, time: now }
}

#[derive(Default, Clone, Copy)]
struct FailAcc {
    n: u64,
    s_visits: f64,
    q_visits: f64,
    s_time: f64,
    q_time: f64,
    s_ka: f64,
    q_ka: f64,
    s_db: f64,
    q_db: f64,
    s_total: f64,
    q_total: f64,
    s_cost: f64,
    q_cost: f64,
    s_noloss: f64,
    q_noloss: f64,
    x_cost_time: f64,
}

impl FailAcc {
    fn push(&mut self, visits: f64, time: f64, ka: f64, db: f64, cost: f64, noloss: f64) {
        let total = ka + db;
        self.n += 1;
        self.s_visits += visits;
        self.q_visits += visits * visits;
        self.s_time += time;
        self.q_time += time * time;
        self.s_ka += ka;
        self.q_ka += ka * ka;
        self.s_db += db;
        self.q_db += db * db;
        self.s_total += total;
        self.q_total += total * total;
        self.s_cost += cost;
        self.q_cost += cost * cost;
        self.s_noloss += noloss;
        self.q_noloss += noloss * noloss;
        self.x_cost_time += cost * time;
    }

    fn merge(mut self, o: FailAcc) -> FailAcc {
        self.n += o.n;
        self.s_visits += o.s_visits;
        self.q_visits += o.q_visits;
        self.s_time += o.s_time;
        self.q_time += o.q_time;
        self.s_ka += o.s_ka;
        self.q_ka += o.q_ka;
        self.s_db += o.s_db;
        self.q_db += o.q_db;
        self.s_total += o.s_total;
        self.q_total += o.q_total;
        self.s_cost += o.s_cost;
        self.q_cost += o.q_cost;
        self.s_noloss += o.s_noloss;
        self.q_noloss += o.q_noloss;
        self.x_cost_time += o.x_cost_time;
        self
    }

    fn scalar(&self, sum: f64, sumsq: f64, quantity: Quantity) -> SimEstimate {
        let n = self.n as f64;
        let mean = sum / n;
        let dof = (self.n - 1).max(1) as f64;
        let var = ((sumsq - sum * sum / n) / dof).max(0.0);
        SimEstimate { mean, std_error: (var / n).sqrt(), trials: self.n, quantity }
    }

    /// Ratio-of-means estimate for the cost rate with a delta-method
    /// standard error.
    fn cost_rate(&self) -> SimEstimate {
        let n = self.n as f64;
        let dof = (self.n - 1).max(1) as f64;
        let mean_c = self.s_cost / n;
        let mean_t = self.s_time / n;
        let ratio = self.s_cost / self.s_time;
        let var_c = ((self.q_cost - n * mean_c * mean_c) / dof).max(0.0);
        let var_t = ((self.q_time - n * mean_t * mean_t) / dof).max(0.0);
        let cov = (self.x_cost_time - n * mean_c * mean_t) / dof;
        let var_r = ((var_c - 2.0 * ratio * cov + ratio * ratio * var_t) / n).max(0.0);
        SimEstimate {
            mean: ratio,
            std_error: var_r.sqrt() / mean_t,
            trials: self.n,
            quantity: Quantity::CostRate,
        }
    }
}

/// Simulates full cycles of the repair phase in which departures keep
/// interrupting running repairs, and estimates everything the chain
/// solver computes.
///
/// Repairs below `d` live nodes are priced `k * alpha`, the rest
/// `gamma`. The loss-free frequency is averaged over the race outcomes
/// given each trial's arrival count (the conditional survival
/// probability is exact, which only shrinks the variance). Requires
/// [`ClockModel::FailuresDuringRepair`] and distributed repair.
pub fn simulate_failures_model(
    p: &CodeParams,
    op: &OperatingPoint,
    churn: &ChurnParams,
    tau: u32,
    config: &SimConfig,
) -> Result<FailuresEstimates> {
    validate_tau(p, tau)?;
    if config.model() != ClockModel::FailuresDuringRepair {
        return Err(Error::ModelContext {
            model: config.model(),
            context: "the interrupted-repair chain (its cycle time has a closed form)",
        });
    }
    if config.strategy() == Strategy::Centralized {
        return Err(Error::StrategyContext {
            strategy: Strategy::Centralized,
            context: "the interrupted-repair chain (defined for distributed repair)",
        });
    }
    let (n, d, tau_f) = (p.n(), p.d(), f64::from(tau));
    let (lambda, mu) = (churn.lambda(), churn.mu());
    let price_ka = f64::from(p.k()) * op.alpha;
    let price_db = op.gamma;
    let up_rate = f64::from(n - tau) * mu;
    let survive = up_rate / (tau_f * lambda + up_rate);
    let clocks = config.clocks();
    let (trials, base_seed) = (config.trials(), config.base_seed());

    let chunks = trials.div_ceil(CHUNK);
    let partials: Vec<FailAcc> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(trials);
            let mut acc = FailAcc::default();
            for index in lo..hi {
                let mut rng = trial_rng(base_seed, index);
                let tally = match clocks {
                    RepairClocks::Aggregate => {
                        failures_trial_aggregate(&mut rng, n, d, tau, lambda, mu)
                    }
                    RepairClocks::PerNode => {
                        failures_trial_per_node(&mut rng, n, d, tau, lambda, mu)
                    }
                };
                let ka = tally.below_d as f64;
                let db = tally.at_or_above_d as f64;
                let cost = ka * price_ka + db * price_db;
                let noloss = survive.powf(tally.visits as f64);
                acc.push(tally.visits as f64, tally.time, ka, db, cost, noloss);
            }
            acc
        })
        .collect();
    let acc = partials.into_iter().fold(FailAcc::default(), FailAcc::merge);
    Ok(FailuresEstimates {
        revisits: acc.scalar(acc.s_visits, acc.q_visits, Quantity::Revisits),
        time_to_full: acc.scalar(acc.s_time, acc.q_time, Quantity::TimeToFull),
        repairs_kalpha: acc.scalar(acc.s_ka, acc.q_ka, Quantity::RepairsKalpha),
        repairs_dbeta: acc.scalar(acc.s_db, acc.q_db, Quantity::RepairsDbeta),
        repairs_total: acc.scalar(acc.s_total, acc.q_total, Quantity::RepairsTotal),
        cost_rate: acc.cost_rate(),
        no_loss_freq: acc.scalar(acc.s_noloss, acc.q_noloss, Quantity::NoLossFreq),
    })
}
