//! Transfer matrices against direct integration of the channel equations.

use larmor_clock::profile::{discretize, BarrierProfile};
use larmor_clock::scattering::{ode_oracle, scatter_channel};
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    let particle = ParticleState::new(1.6, 1.0)?;

    let step = BarrierProfile::piecewise(
        vec![
            larmor_clock::profile::Segment {
                length: 0.7,
                height: 1.1,
            },
            larmor_clock::profile::Segment {
                length: 0.4,
                height: 0.2,
            },
            larmor_clock::profile::Segment {
                length: 0.9,
                height: 1.8,
            },
        ],
        None,
    )?;
    let exact = step.exact_segments().expect("piecewise");
    let tm = scatter_channel(&exact, &particle, 0.0)?;
    let ode = ode_oracle(&exact, &particle, 0.0)?;
    println!(
        "piecewise: T_tm = {:.12}, T_ode = {:.12}, |dT| = {:.1e}",
        tm.t,
        ode.t,
        (tm.t - ode.t).norm()
    );

    // Linear interpolation between samples: the ODE sees the ramps exactly,
    // the transfer matrix sees a staircase.
    let ramp = BarrierProfile::sampled(vec![(-1.0, 0.0), (-0.2, 1.2), (0.5, 0.6), (1.0, 0.0)])?;
    let ode = ode_oracle(&ramp, &particle, 0.0)?;
    for n in [64, 256, 1024, 4096] {
        let tm = scatter_channel(&discretize(&ramp, n)?, &particle, 0.0)?;
        println!(
            "sampled n = {n:>4}: |T_tm - T_ode| = {:.2e}",
            (tm.t - ode.t).norm()
        );
    }
    Ok(())
}
