//! Dirac clock against the Schrodinger reference as E - m grows.

use larmor_clock::clock::schrodinger_reference;
use larmor_clock::clock::{channel_times, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    let barrier = PiecewiseBarrier::centered(&[(2.0, 0.02)])?;
    println!(
        "{:>8} {:>14} {:>14} {:>9}",
        "E - m", "Dirac tau_T", "Schr tau_T", "rel"
    );
    for kinetic in [0.005, 0.01, 0.03, 0.1, 0.3, 1.0] {
        let particle = ParticleState::new(1.0 + kinetic, 1.0)?;
        let dirac = channel_times(&barrier, &particle, &FdOptions::default())?.tau_t;
        let schr = schrodinger_reference(&barrier, kinetic, 1.0, 1e-6)?.tau_t;
        println!(
            "{kinetic:>8} {dirac:>14.8} {schr:>14.8} {:>9.4}",
            (dirac - schr).abs() / schr
        );
    }
    Ok(())
}
