//! Exact repair-phase statistics when departures keep arriving during
//! repair.
//!
//! Solves the birth-death balance equations of the repair phase for the
//! expected revisits to the threshold, repairs of each kind, time back
//! to full strength, and the cost rate conditioned on surviving the
//! phase.
//!
//! Run with: cargo run --example failure_chain

use churnmend::chain::conditional_cost_rate;
use churnmend::codes::msr_point;
use churnmend::{ChurnParams, CodeParams};

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 20, 27, 1.0)?;
    let op = msr_point(&p);

    println!("deployment: n=30 k=20 d=27, mu=10, MSR");
    println!();
    println!(
        "{:>7} {:>4} {:>10} {:>12} {:>14} {:>12} {:>10} {:>10}",
        "lambda", "tau", "revisits", "time_to_full", "reconstructions", "regenerations",
        "cost_rate", "p(no loss)"
    );
    for tau in [25, 27] {
        for lambda in [0.1, 0.2, 0.4] {
            let churn = ChurnParams::new(lambda, 10.0)?;
            let sol = conditional_cost_rate(&p, &op, &churn, tau)?;
            println!(
                "{:>7} {:>4} {:>10.4} {:>12.4} {:>14.4} {:>12.4} {:>10.4} {:>10.4}",
                lambda,
                tau,
                sol.revisits_at_tau,
                sol.time_to_full,
                sol.lower_arc_below_d,
                sol.lower_arc_total - sol.lower_arc_below_d,
                sol.conditional_cost_rate,
                sol.no_loss_prob,
            );
        }
    }
    println!();
    println!("at tau = 27 = d no repair runs below d helpers, so reconstructions vanish;");
    println!("regeneration counts do not depend on the threshold, only on the walk above d");
    Ok(())
}
