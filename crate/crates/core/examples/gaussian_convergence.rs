//! Discretization study on a Gaussian barrier.

use larmor_clock::clock::{clock_times, FdOptions};
use larmor_clock::profile::{discretize, BarrierProfile, DEFAULT_GAUSSIAN_NODES};
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    let profile = BarrierProfile::gaussian(0.8, 0.6, DEFAULT_GAUSSIAN_NODES)?;
    let particle = ParticleState::new(1.3, 1.0)?;
    let mut previous: Option<f64> = None;
    println!(
        "{:>6} {:>18} {:>10} {:>10}",
        "n", "tau_L", "delta", "identity"
    );
    for k in 6..=13 {
        let n = 1usize << k;
        let barrier = discretize(&profile, n)?;
        let t = clock_times(&barrier, &particle, &FdOptions::default())?;
        let delta = previous.map_or(f64::NAN, |p| (t.tau_l - p).abs());
        println!(
            "{n:>6} {:>18.14} {delta:>10.2e} {:>10.2e}",
            t.tau_l,
            t.identity_residual()
        );
        previous = Some(t.tau_l);
    }
    Ok(())
}
