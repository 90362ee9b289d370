//! Tunneling clock times.
//!
//! The channel times are phase sensitivities to the spin-field coupling at
//! `V = 0`,
//!
//! ```text
//! tau_T = -d alpha / dV,    tau_R = -d beta / dV,
//! ```
//!
//! where `alpha = arg T_{U+V}` and `beta = arg R_{U+V}`. The Larmor time is
//! their probability-weighted average and the dwell time is the integrated
//! density over the incident flux. All times are in units of `hbar / (m c^2)`.

pub mod analytic;
pub mod hartman;
pub mod schrodinger;

pub use analytic::{analytic_rect_tau_t, tau_infinity, RectangularKinematics};
pub use hartman::{hartman_sweep, HartmanPoint};
pub use schrodinger::{schrodinger_reference, SchrodingerTimes};

use crate::error::{Error, Result};
use crate::profile::PiecewiseBarrier;
use crate::scattering::{interior_field, scatter_channel, scatter_spin, ScatteringResult};
use crate::units::ParticleState;

/// Below this `|R_U|^2` the reflection phase is treated as undefined.
pub const RESONANCE_R2: f64 = 1e-20;

/// Finite-difference settings for the phase derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    /// Field step `h`; central differences use `V = +-h`.
    pub step: f64,
    /// Use `(4 D(h/2) - D(h)) / 3` instead of `D(h)`.
    pub richardson: bool,
    /// Maximum relative change allowed when the step is halved.
    pub halving_tol: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self {
            step: 1e-6,
            richardson: false,
            halving_tol: 1e-4,
        }
    }
}

impl FdOptions {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::invalid(
                "fd_step",
                "finite-difference step must be positive",
            ));
        }
        Ok(())
    }
}

/// `(tau_T, tau_R)` from central differences at step `h`.
///
/// The phase difference is taken as `arg(T_{U+h} conj(T_{U-h}))`, which
/// stays continuous across the branch cut of `arg`.
pub fn central_difference(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    h: f64,
) -> Result<(f64, f64)> {
    let pair = scatter_spin(barrier, particle, h)?;
    let (plus, minus) = (pair.down, pair.up);
    let dt = (plus.t * minus.t.conj()).arg() / (2.0 * h);
    let dr = (plus.r * minus.r.conj()).arg() / (2.0 * h);
    Ok((-dt, -dr))
}

/// Channel times with convergence diagnostics. `tau_r` is `None` at a
/// transmission resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTimes {
    pub tau_t: f64,
    pub tau_r: Option<f64>,
    /// Solve at `V = 0`.
    pub unshifted: ScatteringResult,
    pub step: f64,
    /// Relative change of the result when the step is halved.
    pub halving_change: f64,
    pub converged: bool,
}

fn rel_change(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-8)
}

fn estimate(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    h: f64,
    richardson: bool,
) -> Result<(f64, f64)> {
    let coarse = central_difference(barrier, particle, h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = central_difference(barrier, particle, 0.5 * h)?;
    Ok((
        (4.0 * fine.0 - coarse.0) / 3.0,
        (4.0 * fine.1 - coarse.1) / 3.0,
    ))
}

/// `tau_T` and `tau_R` with a step-halving check; never fails on resonance.
pub fn channel_times(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    opts: &FdOptions,
) -> Result<PhaseTimes> {
    opts.validate()?;
    let unshifted = scatter_channel(barrier, particle, 0.0)?;
    let resonant = unshifted.r.norm_sqr() < RESONANCE_R2;
    let (tau_t, tau_r) = estimate(barrier, particle, opts.step, opts.richardson)?;
    let (half_t, half_r) = estimate(barrier, particle, 0.5 * opts.step, opts.richardson)?;
    let mut change = rel_change(tau_t, half_t);
    if !resonant {
        change = change.max(rel_change(tau_r, half_r));
    }
    Ok(PhaseTimes {
        tau_t,
        tau_r: (!resonant).then_some(tau_r),
        unshifted,
        step: opts.step,
        halving_change: change,
        converged: change <= opts.halving_tol,
    })
}

/// `(tau_T, tau_R)`; fails at a transmission resonance or when halving
/// the step moves the result by more than `opts.halving_tol`.
pub fn phase_times(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    opts: &FdOptions,
) -> Result<(f64, f64)> {
    let times = channel_times(barrier, particle, opts)?;
    let tau_r = times.tau_r.ok_or(Error::ReflectionVanishes {
        r2: times.unshifted.r.norm_sqr(),
    })?;
    if !times.converged {
        return Err(Error::StepTooLarge {
            quantity: "phase times",
            rel_change: times.halving_change,
        });
    }
    Ok((times.tau_t, tau_r))
}

/// Larmor time `(1+f0^2)|T|^2 tau_T + (1+f0^2)|R|^2 tau_R`; the reflection
/// term is dropped at a transmission resonance.
pub fn larmor_time(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    opts: &FdOptions,
) -> Result<f64> {
    let times = channel_times(barrier, particle, opts)?;
    Ok(larmor_combination(&times))
}

fn larmor_combination(times: &PhaseTimes) -> f64 {
    let weight_t = times.unshifted.transmission();
    match times.tau_r {
        Some(tau_r) => weight_t * times.tau_t + times.unshifted.reflection() * tau_r,
        None => weight_t * times.tau_t,
    }
}

/// Dwell time `int_a^b rho dx / j_in`, `j_in = 2 f0 / (1 + f0^2)`.
pub fn dwell_time(barrier: &PiecewiseBarrier, particle: &ParticleState) -> Result<f64> {
    let field = interior_field(barrier, particle, 0.0)?;
    Ok(field.integrated_density() / particle.incident_flux())
}

/// Time for free flight across `length` at group velocity `k0 / E`.
pub fn free_traversal_time(particle: &ParticleState, length: f64) -> f64 {
    length / particle.group_velocity()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockTimes {
    pub tau_t: f64,
    /// `None` at a transmission resonance.
    pub tau_r: Option<f64>,
    pub tau_l: f64,
    pub tau_d: f64,
    pub fd_step: f64,
    /// Relative change of the phase times when the step is halved.
    pub halving_change: f64,
    pub converged: bool,
    pub resonance: bool,
    /// `(1+f0^2)|T_U|^2`.
    pub transmission: f64,
    /// `(1+f0^2)|R_U|^2`.
    pub reflection: f64,
}

impl ClockTimes {
    /// `|tau_L - tau_D| / tau_D`.
    pub fn identity_residual(&self) -> f64 {
        (self.tau_l - self.tau_d).abs() / self.tau_d.abs()
    }
}

/// Every clock quantity for one barrier and energy.
pub fn clock_times(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    opts: &FdOptions,
) -> Result<ClockTimes> {
    let times = channel_times(barrier, particle, opts)?;
    let tau_d = dwell_time(barrier, particle)?;
    Ok(ClockTimes {
        tau_t: times.tau_t,
        tau_r: times.tau_r,
        tau_l: larmor_combination(&times),
        tau_d,
        fd_step: times.step,
        halving_change: times.halving_change,
        converged: times.converged,
        resonance: times.tau_r.is_none(),
        transmission: times.unshifted.transmission(),
        reflection: times.unshifted.reflection(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect() -> PiecewiseBarrier {
        PiecewiseBarrier::centered(&[(2.0, 1.0)]).unwrap()
    }

    #[test]
    fn free_flight() {
        let p = ParticleState::new(2f64.sqrt(), 1.0).unwrap();
        let l = 1.7;
        let b = PiecewiseBarrier::empty_region(-0.2, l).unwrap();
        let t = clock_times(&b, &p, &FdOptions::default()).unwrap();
        let expected = l * 2f64.sqrt();
        assert!((t.tau_t - expected).abs() < 1e-8);
        assert!((t.tau_l - expected).abs() < 1e-8);
        assert!((t.tau_d - expected).abs() < 1e-12);
        assert!(t.resonance);
        assert!(matches!(
            phase_times(&b, &p, &FdOptions::default()),
            Err(Error::ReflectionVanishes { .. })
        ));
    }

    #[test]
    fn rectangular_reference_times() {
        let p = ParticleState::new(1.2, 1.0).unwrap();
        let (tt, tr) = phase_times(&rect(), &p, &FdOptions::default()).unwrap();
        // closed form evaluated independently: 0.693773057852...
        assert!((tt - 0.693_773_057_852_265_7).abs() < 1e-8);
        assert!((tt - tr).abs() < 1e-8);
        let tl = larmor_time(&rect(), &p, &FdOptions::default()).unwrap();
        let td = dwell_time(&rect(), &p).unwrap();
        assert!((tl - td).abs() < 1e-6 * td);
    }

    #[test]
    fn asymmetric_identity() {
        let p = ParticleState::new(1.45, 1.0).unwrap();
        let b = PiecewiseBarrier::centered(&[(1.0, 0.5), (1.0, 1.0)]).unwrap();
        let t = clock_times(&b, &p, &FdOptions::default()).unwrap();
        assert!(t.identity_residual() < 1e-6);
        assert!((t.tau_t - t.tau_r.unwrap()).abs() > 1e-3);
    }

    #[test]
    fn weights_sum_to_one() {
        let p = ParticleState::new(1.3, 1.0).unwrap();
        let t = clock_times(&rect(), &p, &FdOptions::default()).unwrap();
        assert!((t.transmission + t.reflection - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coarse_step_is_rejected() {
        let p = ParticleState::new(1.2, 1.0).unwrap();
        let res = phase_times(&rect(), &p, &FdOptions::with_step(0.05));
        assert!(matches!(res, Err(Error::StepTooLarge { .. })));
        assert!(phase_times(&rect(), &p, &FdOptions::with_step(-1.0)).is_err());
    }

    #[test]
    fn richardson_improves_coarse_step() {
        let p = ParticleState::new(1.2, 1.0).unwrap();
        let reference = 0.693_773_057_852_265_7;
        let plain = central_difference(&rect(), &p, 1e-2).unwrap().0;
        let opts = FdOptions {
            step: 1e-2,
            richardson: true,
            halving_tol: 1.0,
        };
        let rich = channel_times(&rect(), &p, &opts).unwrap().tau_t;
        assert!((rich - reference).abs() < 0.05 * (plain - reference).abs());
    }

    #[test]
    fn free_traversal_values() {
        let p = ParticleState::new(1.2, 1.0).unwrap();
        assert!((free_traversal_time(&p, 2.0) - 3.618_136_134_933_163).abs() < 1e-12);
        let p = ParticleState::new(2f64.sqrt(), 1.0).unwrap();
        assert!((free_traversal_time(&p, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        let p = ParticleState::new(1e9, 1.0).unwrap();
        assert!((free_traversal_time(&p, 3.0) - 3.0).abs() < 1e-12);
    }
}
