//! Average repair cost rate versus the repair threshold for the four
//! single-newcomer schemes, at a low and a high churn ratio.
//!
//! At low churn the lazy end of the regeneration window wins and the
//! minimum-bandwidth code dominates; at high churn every curve becomes
//! decreasing and eager repair wins.
//!
//! Run with: cargo run --example repair_cost_curves

use churnmend::analytic::{rate_centralized, rate_distributed};
use churnmend::codes::{mbr_point, msr_point};
use churnmend::{ChurnParams, CodeParams};

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 20, 25, 1.0)?;
    let msr = msr_point(&p);
    let mbr = mbr_point(&p);

    for rho in [1e-4, 1.0] {
        let churn = ChurnParams::from_rho(rho)?;
        println!("rho = {rho}");
        println!(
            "{:>4} {:>12} {:>12} {:>12} {:>12}",
            "tau", "D-MSR", "D-MBR", "C-MSR", "C-MBR"
        );
        for tau in p.k()..p.n() {
            println!(
                "{:>4} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
                tau,
                rate_distributed(&p, &msr, &churn, tau)?.cost_rate,
                rate_distributed(&p, &mbr, &churn, tau)?.cost_rate,
                rate_centralized(&p, &msr, &churn, tau)?.cost_rate,
                rate_centralized(&p, &mbr, &churn, tau)?.cost_rate,
            );
        }
        println!();
    }
    println!("cost rate: expected symbols transferred per unit time, cost / cycle length");
    Ok(())
}
