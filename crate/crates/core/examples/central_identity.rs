//! Larmor time against dwell time on random asymmetric barriers.

use larmor_clock::clock::{clock_times, FdOptions};
use larmor_clock::scenario::validate::{random_family, DEFAULT_SEED};

fn main() -> larmor_clock::Result<()> {
    let mut worst = 0.0f64;
    println!(
        "{:>3} {:>4} {:>8} {:>14} {:>14} {:>10}",
        "#", "segs", "E", "tau_L", "tau_D", "rel"
    );
    for (i, case) in random_family(DEFAULT_SEED, 20).iter().enumerate() {
        let t = clock_times(&case.barrier, &case.particle, &FdOptions::default())?;
        let rel = t.identity_residual();
        worst = worst.max(rel);
        println!(
            "{i:>3} {:>4} {:>8.4} {:>14.9} {:>14.9} {rel:>10.2e}",
            case.barrier.len(),
            case.particle.energy,
            t.tau_l,
            t.tau_d,
        );
    }
    println!("worst relative difference: {worst:.2e}");
    Ok(())
}
