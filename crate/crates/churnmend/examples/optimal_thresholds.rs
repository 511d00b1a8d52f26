//! Closed-form optimal repair thresholds, their churn boundaries, and
//! the regime classification across a churn-ratio sweep.
//!
//! Run with: cargo run --example optimal_thresholds

use churnmend::codes::{mbr_point, msr_point};
use churnmend::thresholds::{
    optimal_tau_centralized, optimal_tau_hybrid, optimal_tau_regeneration,
    regeneration_dominates, rho_regimes,
};
use churnmend::{ChurnParams, CodeParams};

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 20, 25, 1.0)?;
    let msr = msr_point(&p);
    let mbr = mbr_point(&p);

    let regimes = rho_regimes(&p, &msr, &mbr)?;
    println!("deployment: n=30 k=20 d=25");
    println!(
        "lazy below rho = {:.6}, eager above rho = {:.6}",
        regimes.rho_low, regimes.rho_high
    );
    println!(
        "(a negative lazy boundary means no churn ratio is lazy for every scheme)"
    );
    println!();

    println!(
        "{:>10} {:>8} {:>14} {:>14} {:>13}",
        "rho", "regime", "regen window", "hybrid window", "centralized"
    );
    for exponent in [-4i32, -3, -2, -1, 0] {
        let rho = 10f64.powi(exponent);
        let churn = ChurnParams::from_rho(rho)?;
        let regen = optimal_tau_regeneration(&p, &churn)?;
        let hybrid = optimal_tau_hybrid(&p, &mbr, &churn)?;
        let central = optimal_tau_centralized(&p, &churn)?;
        println!(
            "{:>10.0e} {:>8} {:>14} {:>14} {:>13}",
            rho,
            regimes.classify(rho).to_string(),
            format!("tau*={}", regen.optimal_tau),
            format!("tau*={}", hybrid.optimal_tau),
            format!("tau*={}", central.optimal_tau),
        );
    }
    println!();
    println!(
        "boundaries: regeneration {:.6}, hybrid (MBR) {:.6}, centralized {:.6}",
        optimal_tau_regeneration(&p, &ChurnParams::from_rho(0.1)?)?.rho_bound,
        optimal_tau_hybrid(&p, &mbr, &ChurnParams::from_rho(0.1)?)?.rho_bound,
        optimal_tau_centralized(&p, &ChurnParams::from_rho(0.1)?)?.rho_bound,
    );
    println!(
        "regeneration dominates reconstruction here: MSR {}, MBR {}",
        regeneration_dominates(&p, &msr),
        regeneration_dominates(&p, &mbr),
    );
    Ok(())
}
