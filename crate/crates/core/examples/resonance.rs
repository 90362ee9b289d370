//! Above-barrier transmission resonance: R vanishes and tau_R is undefined,
//! yet tau_L still equals tau_D.

use std::f64::consts::PI;

use larmor_clock::clock::{clock_times, phase_times, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    // p L = pi inside the barrier for E = 2, L = 2.
    let u0 = (4.0 - PI * PI / 4.0).sqrt() - 1.0;
    let barrier = PiecewiseBarrier::centered(&[(2.0, u0)])?;
    for energy in [1.9, 1.99, 2.0, 2.01, 2.1] {
        let particle = ParticleState::new(energy, 1.0)?;
        let t = clock_times(&barrier, &particle, &FdOptions::default())?;
        let tau_r = match t.tau_r {
            Some(x) => format!("{x:.8}"),
            None => "undefined".into(),
        };
        println!(
            "E = {energy:<5} |R|^2 = {:.2e} tau_T = {:.8} tau_R = {tau_r:>11} tau_L - tau_D = {:.1e}",
            t.reflection,
            t.tau_t,
            t.tau_l - t.tau_d
        );
    }
    let at_resonance = ParticleState::new(2.0, 1.0)?;
    if let Err(e) = phase_times(&barrier, &at_resonance, &FdOptions::default()) {
        println!("phase_times at E = 2: {e}");
    }
    Ok(())
}
