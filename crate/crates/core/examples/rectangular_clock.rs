//! Clock times for a rectangular barrier, against the closed form.

use larmor_clock::clock::{analytic_rect_tau_t, clock_times, free_traversal_time, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::units::ParticleState;

fn main() -> larmor_clock::Result<()> {
    let (energy, u0, d) = (1.2, 1.0, 1.0);
    let particle = ParticleState::new(energy, 1.0)?;
    let barrier = PiecewiseBarrier::centered(&[(2.0 * d, u0)])?;
    let t = clock_times(&barrier, &particle, &FdOptions::default())?;

    println!("E = {energy}, U0 = {u0}, barrier [-{d}, {d}]");
    println!("tau_T     = {:.12}", t.tau_t);
    println!("tau_R     = {:.12}", t.tau_r.unwrap_or(f64::NAN));
    println!("tau_L     = {:.12}", t.tau_l);
    println!("tau_D     = {:.12}", t.tau_d);
    println!(
        "closed    = {:.12}",
        analytic_rect_tau_t(energy, u0, d, 1.0)?
    );
    println!(
        "free      = {:.12}",
        free_traversal_time(&particle, 2.0 * d)
    );
    println!("|T|^2     = {:.6e}", t.transmission);
    Ok(())
}
