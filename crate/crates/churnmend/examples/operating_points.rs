//! Storage and bandwidth operating points for every supported code
//! family at one deployment shape.
//!
//! Run with: cargo run --example operating_points

use churnmend::codes::{mbcr_point, mbmr_point, mbr_point, mscr_point, msmr_point, msr_point};
use churnmend::CodeParams;

fn main() -> churnmend::Result<()> {
    let p = CodeParams::new(30, 19, 25, 1.0)?;
    println!(
        "deployment: n={} k={} d={} file_size={}",
        p.n(),
        p.k(),
        p.d(),
        p.file_size()
    );
    println!();
    println!("{:<22} {:>10} {:>10} {:>10} {:>10}", "point", "alpha", "beta", "beta'", "gamma");

    let show = |name: &str, op: churnmend::OperatingPoint| {
        println!(
            "{:<22} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            name, op.alpha, op.beta, op.beta_prime, op.gamma
        );
    };

    show("MSR (single)", msr_point(&p));
    show("MBR (single)", mbr_point(&p));
    for t in [2, 5] {
        show(&format!("MSCR (groups of {t})"), mscr_point(&p, t)?);
        show(&format!("MBCR (groups of {t})"), mbcr_point(&p, t)?);
        show(&format!("MSMR (batches of {t})"), msmr_point(&p, t)?);
        show(&format!("MBMR (batches of {t})"), mbmr_point(&p, t)?);
    }

    println!();
    println!("alpha: stored per node; gamma: downloaded per repaired node");
    println!("beta: per-helper transfer; beta': per-peer transfer (cooperative only)");
    Ok(())
}
