//! Monte Carlo estimators: determinism, thread invariance, and agreement
//! with the closed forms they exist to verify.

use churnmend::analytic::expected_cycle_time;
use churnmend::chain::conditional_cost_rate;
use churnmend::codes::msr_point;
use churnmend::montecarlo::{
    simulate_cycle_time, simulate_failures_model, simulate_mttdl, SimConfig, SimEstimate,
};
use churnmend::reliability::{mttdl_fixed, mttdl_node_dependent};
use churnmend::{ChurnParams, ClockModel, CodeParams, Error, Strategy};

/// Gate for single-estimate agreement checks at 1e5 trials. Wider than
/// the acceptance gate so an unlucky stream cannot flake the suite.
const Z_GATE: f64 = 4.0;

fn params(n: u32, k: u32, d: u32) -> CodeParams {
    CodeParams::new(n, k, d, 1.0).unwrap()
}

fn z_score(estimate: &SimEstimate, reference: f64) -> f64 {
    (estimate.mean - reference) / estimate.std_error
}

/// Two-sample z: both estimates carry their own Monte Carlo error.
fn z_between(a: &SimEstimate, b: &SimEstimate) -> f64 {
    (a.mean - b.mean) / (a.std_error * a.std_error + b.std_error * b.std_error).sqrt()
}

#[test]
fn identical_configs_reproduce_bitwise() {
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let config = SimConfig::new(20_000, 7, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let a = simulate_cycle_time(&p, &churn, 25, &config).unwrap();
    let b = simulate_cycle_time(&p, &churn, 25, &config).unwrap();
    assert_eq!(a.mean, b.mean);
    assert_eq!(a.std_error, b.std_error);
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let p = params(30, 20, 27);
    let op = msr_point(&p);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let config =
        SimConfig::new(60_000, 11, ClockModel::FailuresDuringRepair, Strategy::Distributed)
            .unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| simulate_failures_model(&p, &op, &churn, 25, &config).unwrap());
    let several = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| simulate_failures_model(&p, &op, &churn, 25, &config).unwrap());
    assert_eq!(single.revisits.mean, several.revisits.mean);
    assert_eq!(single.time_to_full.mean, several.time_to_full.mean);
    assert_eq!(single.cost_rate.mean, several.cost_rate.mean);
    assert_eq!(single.cost_rate.std_error, several.cost_rate.std_error);
    assert_eq!(single.no_loss_freq.mean, several.no_loss_freq.mean);
}

#[test]
fn different_seeds_give_different_streams() {
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let a = SimConfig::new(5_000, 1, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let b = SimConfig::new(5_000, 2, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let ea = simulate_cycle_time(&p, &churn, 25, &a).unwrap();
    let eb = simulate_cycle_time(&p, &churn, 25, &b).unwrap();
    assert_ne!(ea.mean, eb.mean);
    // Yet both estimate the same quantity.
    assert!(z_between(&ea, &eb).abs() < Z_GATE);
}

#[test]
fn zero_trials_are_rejected() {
    assert!(matches!(
        SimConfig::new(0, 1, ClockModel::Fixed, Strategy::Distributed),
        Err(Error::Trials)
    ));
}

#[test]
fn model_and_strategy_domains_are_enforced() {
    let p = params(30, 20, 25);
    let op = msr_point(&p);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();

    let failures =
        SimConfig::new(10, 1, ClockModel::FailuresDuringRepair, Strategy::Distributed).unwrap();
    assert!(matches!(
        simulate_cycle_time(&p, &churn, 25, &failures),
        Err(Error::ModelContext { .. })
    ));
    assert!(matches!(
        simulate_mttdl(&p, &churn, 25, &failures),
        Err(Error::ModelContext { .. })
    ));

    let fixed = SimConfig::new(10, 1, ClockModel::Fixed, Strategy::Distributed).unwrap();
    assert!(matches!(
        simulate_failures_model(&p, &op, &churn, 25, &fixed),
        Err(Error::ModelContext { .. })
    ));

    let central_chain =
        SimConfig::new(10, 1, ClockModel::FailuresDuringRepair, Strategy::Centralized).unwrap();
    assert!(matches!(
        simulate_failures_model(&p, &op, &churn, 25, &central_chain),
        Err(Error::StrategyContext { .. })
    ));

    let central_nd =
        SimConfig::new(10, 1, ClockModel::NodeDependent, Strategy::Centralized).unwrap();
    assert!(matches!(
        simulate_mttdl(&p, &churn, 25, &central_nd),
        Err(Error::StrategyContext { .. })
    ));
}

#[test]
fn cycle_times_agree_with_the_closed_forms() {
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let cases = [
        (ClockModel::Fixed, Strategy::Distributed, 25u32),
        (ClockModel::Fixed, Strategy::Distributed, 29),
        (ClockModel::NodeDependent, Strategy::Distributed, 26),
        (ClockModel::NodeDependent, Strategy::Centralized, 26),
    ];
    for (model, strategy, tau) in cases {
        let config = SimConfig::new(100_000, 42, model, strategy).unwrap();
        let estimate = simulate_cycle_time(&p, &churn, tau, &config).unwrap();
        let reference = expected_cycle_time(&p, &churn, tau, model, strategy).unwrap();
        let z = z_score(&estimate, reference);
        assert!(
            z.abs() < Z_GATE,
            "{model:?}/{strategy:?} tau={tau}: sim {} vs {reference}, z={z:.2}",
            estimate.mean
        );
    }
}

#[test]
fn long_descents_are_estimated_without_bias() {
    // Low churn: the cycle is two orders of magnitude longer than the
    // repair phase, stressing the descent pathway.
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.001, 10.0).unwrap();
    let config = SimConfig::new(100_000, 3, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let estimate = simulate_cycle_time(&p, &churn, 25, &config).unwrap();
    let z = z_score(&estimate, 179.128_953_166_884);
    assert!(z.abs() < Z_GATE, "z={z:.2}");
}

#[test]
fn mttdl_estimates_match_both_closed_forms() {
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();

    let config = SimConfig::new(100_000, 9, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let estimate = simulate_mttdl(&p, &churn, 25, &config).unwrap();
    let reference = mttdl_fixed(&p, &churn, 25).unwrap().mttdl;
    let z = z_score(&estimate, reference);
    assert!(z.abs() < Z_GATE, "fixed: sim {} vs {reference}, z={z:.2}", estimate.mean);

    let config =
        SimConfig::new(100_000, 9, ClockModel::NodeDependent, Strategy::Distributed).unwrap();
    let estimate = simulate_mttdl(&p, &churn, 25, &config).unwrap();
    let reference = mttdl_node_dependent(&p, &churn, 25).unwrap().mttdl;
    let z = z_score(&estimate, reference);
    assert!(z.abs() < Z_GATE, "nd: sim {} vs {reference}, z={z:.2}", estimate.mean);
}

#[test]
fn interrupted_repair_estimates_match_the_chain_solver() {
    let p = params(30, 20, 27);
    let op = msr_point(&p);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let config =
        SimConfig::new(100_000, 5, ClockModel::FailuresDuringRepair, Strategy::Distributed)
            .unwrap();
    let sim = simulate_failures_model(&p, &op, &churn, 25, &config).unwrap();
    let exact = conditional_cost_rate(&p, &op, &churn, 25).unwrap();

    for (estimate, reference, what) in [
        (&sim.revisits, exact.revisits_at_tau, "revisits"),
        (&sim.time_to_full, exact.time_to_full, "time"),
        (&sim.repairs_total, exact.lower_arc_total, "repairs"),
        (&sim.repairs_kalpha, exact.lower_arc_below_d, "reconstructions"),
        (
            &sim.repairs_dbeta,
            exact.lower_arc_total - exact.lower_arc_below_d,
            "regenerations",
        ),
        (&sim.cost_rate, exact.conditional_cost_rate, "cost rate"),
    ] {
        let z = z_score(estimate, reference);
        assert!(
            z.abs() < Z_GATE,
            "{what}: sim {} vs {reference}, z={z:.2}",
            estimate.mean
        );
    }
    // The survival estimate averages exact per-trial probabilities, so it
    // sits above the closed form's plug-in value by a Jensen gap; it must
    // still land in the unit interval near it.
    assert!(sim.no_loss_freq.mean > 0.0 && sim.no_loss_freq.mean < 1.0);
    assert!((sim.no_loss_freq.mean - exact.no_loss_prob).abs() < 0.01);
}

#[test]
fn per_node_clocks_estimate_the_same_process() {
    // The aggregate sampler leans on the memorylessness of the minimum
    // of exponentials; the per-node sampler keeps every clock explicit.
    // Two independent runs must agree within joint Monte Carlo error.
    let p = params(30, 20, 27);
    let op = msr_point(&p);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let aggregate =
        SimConfig::new(100_000, 101, ClockModel::FailuresDuringRepair, Strategy::Distributed)
            .unwrap();
    let per_node =
        SimConfig::new(100_000, 202, ClockModel::FailuresDuringRepair, Strategy::Distributed)
            .unwrap()
            .with_per_node_clocks();
    let a = simulate_failures_model(&p, &op, &churn, 25, &aggregate).unwrap();
    let b = simulate_failures_model(&p, &op, &churn, 25, &per_node).unwrap();
    for (x, y, what) in [
        (&a.revisits, &b.revisits, "revisits"),
        (&a.time_to_full, &b.time_to_full, "time"),
        (&a.repairs_total, &b.repairs_total, "repairs"),
        (&a.repairs_kalpha, &b.repairs_kalpha, "reconstructions"),
        (&a.repairs_dbeta, &b.repairs_dbeta, "regenerations"),
        (&a.cost_rate, &b.cost_rate, "cost rate"),
        (&a.no_loss_freq, &b.no_loss_freq, "survival"),
    ] {
        let z = z_between(x, y);
        assert!(
            z.abs() < Z_GATE,
            "{what}: aggregate {} vs per-node {}, z={z:.2}",
            x.mean,
            y.mean
        );
    }
}

#[test]
fn top_threshold_is_identical_under_fixed_and_node_dependent_clocks() {
    // At tau = n-1 both models draw descent plus one Exp(mu), in the same
    // order, so the estimates agree bitwise at equal seeds.
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let fixed = SimConfig::new(20_000, 13, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let nd = SimConfig::new(20_000, 13, ClockModel::NodeDependent, Strategy::Distributed).unwrap();
    let a = simulate_cycle_time(&p, &churn, 29, &fixed).unwrap();
    let b = simulate_cycle_time(&p, &churn, 29, &nd).unwrap();
    assert_eq!(a.mean, b.mean);
    assert_eq!(a.std_error, b.std_error);
}

#[test]
fn estimates_report_their_sampling_setup() {
    let p = params(30, 20, 25);
    let churn = ChurnParams::new(0.2, 10.0).unwrap();
    let config = SimConfig::new(12_345, 7, ClockModel::Fixed, Strategy::Distributed).unwrap();
    let estimate = simulate_cycle_time(&p, &churn, 25, &config).unwrap();
    assert_eq!(estimate.trials, 12_345);
    assert_eq!(estimate.quantity.to_string(), "cycle_time");
    assert!(estimate.std_error > 0.0);
}
