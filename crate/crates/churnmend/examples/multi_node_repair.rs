//! Leader-based multi-node repair: one newcomer regenerates the whole
//! batch and redistributes fragments to the others.
//!
//! Compares the two multi-node operating points against cooperative
//! repair of the same deficit across the threshold window.
//!
//! Run with: cargo run --example multi_node_repair

use churnmend::analytic::{rate_centralized_multinode, rate_cooperative};
use churnmend::{ChurnParams, CodeParams, Family};

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 19, 25, 1.0)?;
    let churn = ChurnParams::from_rho(0.02)?;

    println!(
        "deployment: n={} k={} d={}, rho={}",
        p.n(),
        p.k(),
        p.d(),
        churn.rho()
    );
    println!();
    println!(
        "{:>4} {:>6} {:>12} {:>12} {:>12} {:>12}",
        "tau", "batch", "C-MSMR", "C-MBMR", "D-MSCR", "D-MBCR"
    );
    for tau in p.d()..p.n() {
        println!(
            "{:>4} {:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            tau,
            p.n() - tau,
            rate_centralized_multinode(&p, &churn, tau, Family::Msmr)?.cost_rate,
            rate_centralized_multinode(&p, &churn, tau, Family::Mbmr)?.cost_rate,
            rate_cooperative(&p, &churn, tau, Family::Mscr)?.cost_rate,
            rate_cooperative(&p, &churn, tau, Family::Mbcr)?.cost_rate,
        );
    }
    println!();
    println!("multi-node repair pays gamma once per batch plus alpha per extra newcomer;");
    println!("cooperative repair pays gamma_t per newcomer with peer exchange");
    Ok(())
}
