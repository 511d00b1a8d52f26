//! Scenario-driven runs behind the CLI subcommands.
//!
//! Each run turns a parsed [`Scenario`] into one CSV table plus stderr
//! notes. Row order is fully determined by the scenario (configured
//! order for schemes and churn points, thresholds ascending as listed),
//! and all numbers go through the same 12-significant-digit formatter,
//! so identical scenarios and seeds yield byte-identical output.

use crate::analytic::{
    expected_cycle_time, rate_centralized, rate_centralized_multinode, rate_cooperative_at,
    rate_distributed, rate_node_dependent,
};
use crate::chain::conditional_cost_rate;
use crate::cli::format::{fmt_g, Table};
use crate::cli::scenario::{Cooperation, Scenario};
use crate::codes::{
    mbr_point, msr_point, ClockModel, CodeParams, Family, OperatingPoint, RepairScheme, Strategy,
    MBMR_ASSUMPTION_NOTE,
};
use crate::error::{Error, Result};
use crate::montecarlo::{
    simulate_cycle_time, simulate_failures_model, simulate_mttdl, Quantity, SimConfig,
    SimEstimate,
};
use crate::reliability::{mttdl_fixed, mttdl_node_dependent};
use crate::thresholds::{
    numeric_argmin, optimal_tau_centralized, optimal_tau_hybrid, optimal_tau_regeneration,
    rho_regimes,
};

/// Result of one subcommand run.
pub struct RunOutput {
    /// Rendered CSV, header included.
    pub csv: String,
    /// Diagnostics for stderr: skipped rows, model caveats, summaries.
    pub notes: Vec<String>,
    /// Failed verification rows; zero for every run but verify.
    pub failed: usize,
}

fn finish(table: Table, notes: Vec<String>) -> Result<RunOutput> {
    if table.is_empty() {
        return Err(Error::EmptyOutput);
    }
    Ok(RunOutput { csv: table.render(), notes, failed: 0 })
}

fn family_key(family: Family) -> String {
    family.to_string().to_ascii_lowercase()
}

fn tau_feasible(p: &CodeParams, tau: u32) -> bool {
    tau >= p.k() && tau < p.n()
}

fn tau_note(run: &str, p: &CodeParams, tau: u32) -> String {
    format!("{run}: skipping tau={tau} (feasible thresholds {}..{})", p.k(), p.n() - 1)
}

fn single_point(p: &CodeParams, family: Family) -> OperatingPoint {
    match family {
        Family::Msr => msr_point(p),
        Family::Mbr => mbr_point(p),
        other => unreachable!("{other} has no single-newcomer operating point"),
    }
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|t| m % t == 0).collect()
}

/// Why a (family, strategy, model) combination has no defined rate, if
/// it has none.
fn model_gap(family: Family, strategy: Strategy, model: ClockModel) -> Option<&'static str> {
    match model {
        ClockModel::Fixed => None,
        ClockModel::NodeDependent => {
            if family.is_cooperative() || family.is_multi_node() {
                Some("node-dependent clocks are modeled for single-newcomer repairs")
            } else {
                None
            }
        }
        ClockModel::FailuresDuringRepair => {
            if family.is_cooperative() || family.is_multi_node() {
                Some("the interrupted-repair chain prices single-newcomer repairs")
            } else if strategy == Strategy::Centralized {
                Some("the interrupted-repair chain covers distributed repair")
            } else {
                None
            }
        }
    }
}

struct RowVals {
    cost: f64,
    cycle_time: f64,
    cost_rate: f64,
    no_loss: Option<f64>,
}

fn evaluate_row(
    p: &CodeParams,
    churn: &crate::codes::ChurnParams,
    family: Family,
    strategy: Strategy,
    model: ClockModel,
    tau: u32,
    group: Option<u32>,
) -> Result<RowVals> {
    match model {
        ClockModel::Fixed => {
            let rp = match family {
                Family::Msr | Family::Mbr => {
                    let op = single_point(p, family);
                    match strategy {
                        Strategy::Distributed => rate_distributed(p, &op, churn, tau)?,
                        Strategy::Centralized => rate_centralized(p, &op, churn, tau)?,
                    }
                }
                Family::Mscr | Family::Mbcr => {
                    let t = group.expect("cooperative rows carry a group size");
                    rate_cooperative_at(p, churn, tau, t, family)?
                }
                Family::Msmr | Family::Mbmr => {
                    rate_centralized_multinode(p, churn, tau, family)?
                }
            };
            Ok(RowVals {
                cost: rp.cost,
                cycle_time: rp.cycle_time,
                cost_rate: rp.cost_rate,
                no_loss: None,
            })
        }
        ClockModel::NodeDependent => {
            let op = single_point(p, family);
            let rp = rate_node_dependent(p, &op, churn, tau, strategy)?;
            Ok(RowVals {
                cost: rp.cost,
                cycle_time: rp.cycle_time,
                cost_rate: rp.cost_rate,
                no_loss: None,
            })
        }
        ClockModel::FailuresDuringRepair => {
            let op = single_point(p, family);
            let sol = conditional_cost_rate(p, &op, churn, tau)?;
            let below = sol.lower_arc_below_d;
            let rest = sol.lower_arc_total - below;
            Ok(RowVals {
                cost: below * f64::from(p.k()) * op.alpha + rest * op.gamma,
                cycle_time: sol.time_to_full,
                cost_rate: sol.conditional_cost_rate,
                no_loss: Some(sol.no_loss_prob),
            })
        }
    }
}

/// Sweeps the repair threshold at one churn point and tabulates cost,
/// cycle time, and cost rate for every configured scheme.
///
/// Columns: scheme, family, model, tau, cost, cycle_time, cost_rate,
/// mttdl (closed forms only), no_loss_prob (interrupted chain only),
/// group_size (cooperative and multi-node rows only).
pub fn run_sweep_tau(s: &Scenario) -> Result<RunOutput> {
    let p = &s.code;
    if s.churn.len() != 1 {
        return Err(Error::Config(
            "sweep-tau expects exactly one churn point; sweep-rho handles ratio grids"
                .to_string(),
        ));
    }
    let churn = &s.churn[0];
    let mut table = Table::new(&[
        "scheme",
        "family",
        "model",
        "tau",
        "cost",
        "cycle_time",
        "cost_rate",
        "mttdl",
        "no_loss_prob",
        "group_size",
    ]);
    let mut notes = Vec::new();
    let mut mbmr_noted = false;
    for &family in &s.families {
        for &strategy in &s.strategies {
            for &model in &s.models {
                // Structurally impossible pairings (cooperative repair is
                // peer-to-peer, multi-node repair needs a leader) are not
                // worth a note; scenarios routinely span both strategies.
                let Ok(scheme) = RepairScheme::new(family, strategy, model) else {
                    continue;
                };
                if let Some(reason) = model_gap(family, strategy, model) {
                    notes.push(format!(
                        "sweep-tau: skipping {} under the {model} model: {reason}",
                        scheme.label()
                    ));
                    continue;
                }
                let lo = if family.is_cooperative() || family.is_multi_node() {
                    p.d()
                } else {
                    p.k()
                };
                for &tau in &s.taus {
                    if tau < lo || tau >= p.n() {
                        notes.push(format!(
                            "sweep-tau: skipping {} at tau={tau} (feasible thresholds {lo}..{})",
                            scheme.label(),
                            p.n() - 1
                        ));
                        continue;
                    }
                    let groups: Vec<Option<u32>> = if family.is_cooperative() {
                        match s.cooperation {
                            Cooperation::Full => vec![Some(p.n() - tau)],
                            Cooperation::AllDivisors => {
                                divisors(p.n() - tau).into_iter().map(Some).collect()
                            }
                        }
                    } else if family.is_multi_node() {
                        vec![Some(p.n() - tau)]
                    } else {
                        vec![None]
                    };
                    for group in groups {
                        let vals = evaluate_row(p, churn, family, strategy, model, tau, group)?;
                        if family == Family::Mbmr && !mbmr_noted {
                            notes.push(MBMR_ASSUMPTION_NOTE.to_string());
                            mbmr_noted = true;
                        }
                        let mttdl_cell = match (model, strategy) {
                            (ClockModel::Fixed, _) => fmt_g(mttdl_fixed(p, churn, tau)?.mttdl),
                            (ClockModel::NodeDependent, Strategy::Distributed) => {
                                fmt_g(mttdl_node_dependent(p, churn, tau)?.mttdl)
                            }
                            _ => String::new(),
                        };
                        table.push(vec![
                            scheme.label(),
                            family_key(family),
                            model.to_string(),
                            tau.to_string(),
                            fmt_g(vals.cost),
                            fmt_g(vals.cycle_time),
                            fmt_g(vals.cost_rate),
                            mttdl_cell,
                            vals.no_loss.map(fmt_g).unwrap_or_default(),
                            group.map(|t| t.to_string()).unwrap_or_default(),
                        ]);
                    }
                }
            }
        }
    }
    finish(table, notes)
}

/// Sweeps the departure-to-repair ratio and tabulates the closed-form
/// optimal thresholds next to a numeric scan of the distributed rate.
///
/// Columns: rho, family, tau_star_regeneration, tau_star_hybrid,
/// tau_star_centralized, rho_low, rho_high, regime, tau_star_scan.
pub fn run_sweep_rho(s: &Scenario) -> Result<RunOutput> {
    let p = &s.code;
    let mut notes = Vec::new();
    let mut families = Vec::new();
    for &family in &s.families {
        if matches!(family, Family::Msr | Family::Mbr) {
            families.push(family);
        } else {
            notes.push(format!("sweep-rho: {family} has no closed-form threshold rules; skipping"));
        }
    }
    if families.is_empty() {
        return Err(Error::Config("sweep-rho needs msr or mbr in families".to_string()));
    }
    let regimes = rho_regimes(p, &msr_point(p), &mbr_point(p))?;
    let mut table = Table::new(&[
        "rho",
        "family",
        "tau_star_regeneration",
        "tau_star_hybrid",
        "tau_star_centralized",
        "rho_low",
        "rho_high",
        "regime",
        "tau_star_scan",
    ]);
    for churn in &s.churn {
        for &family in &families {
            let op = single_point(p, family);
            let regen = optimal_tau_regeneration(p, churn)?;
            let hybrid = optimal_tau_hybrid(p, &op, churn)?;
            let central = optimal_tau_centralized(p, churn)?;
            let curve: Vec<(u32, f64)> = (p.k()..p.n())
                .map(|tau| Ok((tau, rate_distributed(p, &op, churn, tau)?.cost_rate)))
                .collect::<Result<_>>()?;
            let (scan, _) = numeric_argmin(&curve)?;
            table.push(vec![
                fmt_g(churn.rho()),
                family_key(family),
                regen.optimal_tau.to_string(),
                hybrid.optimal_tau.to_string(),
                central.optimal_tau.to_string(),
                fmt_g(regimes.rho_low),
                fmt_g(regimes.rho_high),
                regimes.classify(churn.rho()).to_string(),
                scan.to_string(),
            ]);
        }
    }
    finish(table, notes)
}

/// Tabulates closed-form time to data loss per model, churn point, and
/// threshold.
///
/// Columns: model, lambda, mu, tau, loss_prob, expected_cycles, mttdl.
pub fn run_mttdl(s: &Scenario) -> Result<RunOutput> {
    let p = &s.code;
    let mut notes = Vec::new();
    let mut table =
        Table::new(&["model", "lambda", "mu", "tau", "loss_prob", "expected_cycles", "mttdl"]);
    for &model in &s.models {
        if model == ClockModel::FailuresDuringRepair {
            notes.push(
                "mttdl: the failures-during-repair model has no closed-form time to data loss; skipping"
                    .to_string(),
            );
            continue;
        }
        for churn in &s.churn {
            for &tau in &s.taus {
                if !tau_feasible(p, tau) {
                    notes.push(tau_note("mttdl", p, tau));
                    continue;
                }
                let r = match model {
                    ClockModel::Fixed => mttdl_fixed(p, churn, tau)?,
                    ClockModel::NodeDependent => mttdl_node_dependent(p, churn, tau)?,
                    ClockModel::FailuresDuringRepair => unreachable!("skipped above"),
                };
                table.push(vec![
                    model.to_string(),
                    fmt_g(churn.lambda()),
                    fmt_g(churn.mu()),
                    tau.to_string(),
                    fmt_g(r.per_cycle_loss_prob),
                    fmt_g(r.expected_cycles),
                    fmt_g(r.mttdl),
                ]);
            }
        }
    }
    finish(table, notes)
}

/// Solves the interrupted-repair chain across churn points and
/// thresholds.
///
/// Columns: family, lambda, mu, tau, revisits, time_to_full,
/// repairs_total, repairs_kalpha, repairs_dbeta, cost, cost_rate,
/// no_loss_prob.
pub fn run_chain(s: &Scenario) -> Result<RunOutput> {
    let p = &s.code;
    let mut notes = Vec::new();
    let mut table = Table::new(&[
        "family",
        "lambda",
        "mu",
        "tau",
        "revisits",
        "time_to_full",
        "repairs_total",
        "repairs_kalpha",
        "repairs_dbeta",
        "cost",
        "cost_rate",
        "no_loss_prob",
    ]);
    for &family in &s.families {
        let op = match family {
            Family::Msr => msr_point(p),
            Family::Mbr => mbr_point(p),
            other => {
                notes.push(format!(
                    "chain: {other} is not priced by the interrupted-repair chain; skipping"
                ));
                continue;
            }
        };
        for churn in &s.churn {
            for &tau in &s.taus {
                if !tau_feasible(p, tau) {
                    notes.push(tau_note("chain", p, tau));
                    continue;
                }
                let sol = conditional_cost_rate(p, &op, churn, tau)?;
                let below = sol.lower_arc_below_d;
                let rest = sol.lower_arc_total - below;
                let cost = below * f64::from(p.k()) * op.alpha + rest * op.gamma;
                table.push(vec![
                    family_key(family),
                    fmt_g(churn.lambda()),
                    fmt_g(churn.mu()),
                    tau.to_string(),
                    fmt_g(sol.revisits_at_tau),
                    fmt_g(sol.time_to_full),
                    fmt_g(sol.lower_arc_total),
                    fmt_g(below),
                    fmt_g(rest),
                    fmt_g(cost),
                    fmt_g(sol.conditional_cost_rate),
                    fmt_g(sol.no_loss_prob),
                ]);
            }
        }
    }
    finish(table, notes)
}

struct Recorder {
    table: Table,
    passed: usize,
    failed: usize,
    info: usize,
    corrupt: bool,
}

impl Recorder {
    /// Scores one analytic-vs-simulation row. Everything but the
    /// loss-free frequency is gated at |z| <= 3; that one is
    /// informational because its closed form puts the expected arrival
    /// count, rather than the random one, in the exponent.
    fn push(
        &mut self,
        model: ClockModel,
        strategy: Option<Strategy>,
        family: Option<Family>,
        lambda: f64,
        tau: u32,
        analytic: f64,
        est: &SimEstimate,
    ) {
        let analytic = if self.corrupt { analytic * 1.05 } else { analytic };
        let diff = est.mean - analytic;
        let z = if est.std_error > 0.0 {
            diff / est.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY * diff.signum()
        };
        let verdict = if est.quantity == Quantity::NoLossFreq {
            self.info += 1;
            "INFO"
        } else if z.abs() <= 3.0 {
            self.passed += 1;
            "PASS"
        } else {
            self.failed += 1;
            "FAIL"
        };
        self.table.push(vec![
            model.to_string(),
            strategy.map(|st| st.to_string()).unwrap_or_default(),
            family.map(family_key).unwrap_or_default(),
            fmt_g(lambda),
            tau.to_string(),
            est.quantity.to_string(),
            fmt_g(analytic),
            fmt_g(est.mean),
            fmt_g(est.std_error),
            fmt_g(z),
            verdict.to_string(),
        ]);
    }
}

/// Compares closed forms against seeded simulation, one row per
/// quantity, gated at three standard errors.
///
/// Columns: model, strategy, family, lambda, tau, quantity, analytic,
/// sim_mean, std_error, z_score, verdict. `corrupt_analytic` inflates
/// every analytic value by 5% as a negative control for the gate.
pub fn run_verify(s: &Scenario, corrupt_analytic: bool) -> Result<RunOutput> {
    let p = &s.code;
    let trials = s
        .trials
        .ok_or_else(|| Error::Config("verify needs a [sim] section with trials".to_string()))?;
    let seed = s.seed.unwrap_or(0);
    let mut notes = Vec::new();
    let mut rec = Recorder {
        table: Table::new(&[
            "model",
            "strategy",
            "family",
            "lambda",
            "tau",
            "quantity",
            "analytic",
            "sim_mean",
            "std_error",
            "z_score",
            "verdict",
        ]),
        passed: 0,
        failed: 0,
        info: 0,
        corrupt: corrupt_analytic,
    };
    for &model in &s.models {
        match model {
            ClockModel::Fixed => {
                let config = SimConfig::new(trials, seed, model, Strategy::Distributed)?;
                for churn in &s.churn {
                    for &tau in &s.taus {
                        if !tau_feasible(p, tau) {
                            notes.push(tau_note("verify", p, tau));
                            continue;
                        }
                        let cycle =
                            expected_cycle_time(p, churn, tau, model, Strategy::Distributed)?;
                        let est = simulate_cycle_time(p, churn, tau, &config)?;
                        rec.push(model, None, None, churn.lambda(), tau, cycle, &est);
                        let mt = mttdl_fixed(p, churn, tau)?;
                        let est = simulate_mttdl(p, churn, tau, &config)?;
                        rec.push(model, None, None, churn.lambda(), tau, mt.mttdl, &est);
                    }
                }
            }
            ClockModel::NodeDependent => {
                for &strategy in &s.strategies {
                    let config = SimConfig::new(trials, seed, model, strategy)?;
                    for churn in &s.churn {
                        for &tau in &s.taus {
                            if !tau_feasible(p, tau) {
                                notes.push(tau_note("verify", p, tau));
                                continue;
                            }
                            let cycle = expected_cycle_time(p, churn, tau, model, strategy)?;
                            let est = simulate_cycle_time(p, churn, tau, &config)?;
                            rec.push(model, Some(strategy), None, churn.lambda(), tau, cycle, &est);
                            if strategy == Strategy::Distributed {
                                let mt = mttdl_node_dependent(p, churn, tau)?;
                                let est = simulate_mttdl(p, churn, tau, &config)?;
                                rec.push(
                                    model,
                                    Some(strategy),
                                    None,
                                    churn.lambda(),
                                    tau,
                                    mt.mttdl,
                                    &est,
                                );
                            }
                        }
                    }
                }
            }
            ClockModel::FailuresDuringRepair => {
                let config = SimConfig::new(trials, seed, model, Strategy::Distributed)?;
                for &family in &s.families {
                    let op = match family {
                        Family::Msr => msr_point(p),
                        Family::Mbr => mbr_point(p),
                        other => {
                            notes.push(format!(
                                "verify: {other} is not priced by the interrupted-repair chain; skipping"
                            ));
                            continue;
                        }
                    };
                    for churn in &s.churn {
                        for &tau in &s.taus {
                            if !tau_feasible(p, tau) {
                                notes.push(tau_note("verify", p, tau));
                                continue;
                            }
                            let sol = conditional_cost_rate(p, &op, churn, tau)?;
                            let est = simulate_failures_model(p, &op, churn, tau, &config)?;
                            let below = sol.lower_arc_below_d;
                            let rest = sol.lower_arc_total - below;
                            let strat = Some(Strategy::Distributed);
                            let fam = Some(family);
                            let lambda = churn.lambda();
                            rec.push(model, strat, fam, lambda, tau, sol.revisits_at_tau, &est.revisits);
                            rec.push(model, strat, fam, lambda, tau, sol.time_to_full, &est.time_to_full);
                            rec.push(model, strat, fam, lambda, tau, below, &est.repairs_kalpha);
                            rec.push(model, strat, fam, lambda, tau, rest, &est.repairs_dbeta);
                            rec.push(model, strat, fam, lambda, tau, sol.lower_arc_total, &est.repairs_total);
                            rec.push(model, strat, fam, lambda, tau, sol.conditional_cost_rate, &est.cost_rate);
                            rec.push(model, strat, fam, lambda, tau, sol.no_loss_prob, &est.no_loss_freq);
                        }
                    }
                }
            }
        }
    }
    if rec.table.is_empty() {
        return Err(Error::EmptyOutput);
    }
    notes.push(format!(
        "verify: {} PASS, {} FAIL, {} INFO across {} rows",
        rec.passed,
        rec.failed,
        rec.info,
        rec.table.len()
    ));
    Ok(RunOutput { csv: rec.table.render(), notes, failed: rec.failed })
}
