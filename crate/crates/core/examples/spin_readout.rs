//! Reading the clock off the outgoing spin.

use std::f64::consts::PI;

use larmor_clock::clock::{larmor_time, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::scattering::scatter_spin;
use larmor_clock::spin::{larmor_readout, summed_spin, transmitted_spin};
use larmor_clock::spinor::SpinOrientation;
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    let particle = ParticleState::new(1.45, 1.0)?;
    let barrier = PiecewiseBarrier::centered(&[(1.0, 0.5), (1.0, 1.0)])?;
    let orientation = SpinOrientation::new(0.5 * PI, 0.4)?;
    let tau_l = larmor_time(&barrier, &particle, &FdOptions::default())?;
    println!("tau_L = {tau_l:.10}");
    for v in [1e-3, 1e-4, 1e-5, 1e-6] {
        let reading = larmor_readout(&barrier, &particle, &orientation, v)?;
        let pair = scatter_spin(&barrier, &particle, v)?;
        let s = summed_spin(&pair, &orientation, particle.f0);
        let t = transmitted_spin(&pair, &orientation, particle.f0);
        println!(
            "V = {v:.0e}: read-out {:.10} (rel {:.1e}), summed ({:+.6}, {:+.6}, {:+.6}), |S_T| {:.4}",
            reading.time,
            (reading.time - tau_l).abs() / tau_l,
            s.s1,
            s.s2,
            s.s3,
            t.norm()
        );
    }
    Ok(())
}
