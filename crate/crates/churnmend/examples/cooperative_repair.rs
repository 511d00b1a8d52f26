//! Cooperative repair: how batching newcomers into groups lowers the
//! per-node bandwidth and the resulting cost rate.
//!
//! Newcomers in a group of t download from d helpers and exchange with
//! their t-1 peers; the per-node download gamma_t falls as t grows, so
//! full cooperation (one group for the whole deficit) is always the
//! cheapest batching.
//!
//! Run with: cargo run --example cooperative_repair

use churnmend::analytic::rate_cooperative_at;
use churnmend::codes::{mbcr_point, mscr_point};
use churnmend::{ChurnParams, CodeParams, Family};

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 19, 25, 1.0)?;
    let churn = ChurnParams::from_rho(0.02)?;
    let tau = 25;
    let missing = p.n() - tau;

    println!(
        "deployment: n={} k={} d={}, repair threshold tau={tau} ({missing} departed)",
        p.n(),
        p.k(),
        p.d()
    );
    println!();
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}",
        "group", "MSCR gamma_t", "MSCR rate", "MBCR gamma_t", "MBCR rate"
    );
    for t in 1..=missing {
        if missing % t != 0 {
            continue;
        }
        println!(
            "{:>6} {:>14.6} {:>14.6} {:>14.6} {:>14.6}",
            t,
            mscr_point(&p, t)?.gamma,
            rate_cooperative_at(&p, &churn, tau, t, Family::Mscr)?.cost_rate,
            mbcr_point(&p, t)?.gamma,
            rate_cooperative_at(&p, &churn, tau, t, Family::Mbcr)?.cost_rate,
        );
    }
    println!();
    println!("groups must divide the deficit; gamma_t and the rate fall together");
    Ok(())
}
