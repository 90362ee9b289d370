//! Stationary scattering of one spin channel off a piecewise-constant barrier.
//!
//! The 4-spinor splits into two independent channels. Components `(1, 4)`
//! carry `u1` and see the barrier as `U - V`; components `(2, 3)` carry `u2`
//! and see `U + V`. The scalar barrier `U` enters through the mass term,
//! while the spin-field term shifts the channel energy: a channel "potential
//! offset" `shift` is solved with local energy `E - shift` inside `[a, b]`.
//!
//! Asymptotic forms use absolute coordinates:
//!
//! ```text
//! x < a:  (1, f0) e^{ik0x} / sqrt(1+f0^2) + R (1, -f0) e^{-ik0x}
//! x > b:  T (1, f0) e^{ik0x}
//! ```
//!
//! so an empty barrier gives `T = 1/sqrt(1+f0^2)` and `R = 0`.

mod interior;
mod oracle;
mod transfer;

pub use interior::{interior_field, InteriorField, SegmentAmplitudes};
pub use oracle::{ode_oracle, ode_oracle_with, LinearPiece, OdeTolerances, PiecewiseLinear};
pub use transfer::{
    mode_basis, mode_propagator, segment_matrix, ScaledTransferMatrix, TransferMatrix, MAX_EXPONENT,
};

use num_complex::Complex64;

use crate::error::Result;
use crate::kinematics::ChannelKinematics;
use crate::profile::PiecewiseBarrier;
use crate::units::ParticleState;

/// Spin channel label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// `sigma_3 = +1`, components (1, 4); sees `U - V`.
    Up,
    /// `sigma_3 = -1`, components (2, 3); sees `U + V`.
    Down,
    /// No spin field (`V = 0`).
    Unshifted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub t: Complex64,
    pub r: Complex64,
    /// `arg T` in `(-pi, pi]`.
    pub alpha: f64,
    /// `arg R` in `(-pi, pi]`.
    pub beta: f64,
    pub channel: Channel,
    /// Channel potential offset the solve used.
    pub shift: f64,
    pub f0: f64,
}

impl ScatteringResult {
    fn new(t: Complex64, r: Complex64, channel: Channel, shift: f64, f0: f64) -> Self {
        Self {
            t,
            r,
            alpha: t.arg(),
            beta: r.arg(),
            channel,
            shift,
            f0,
        }
    }

    /// Channel transmission probability `(1+f0^2)|T|^2`.
    pub fn transmission(&self) -> f64 {
        (1.0 + self.f0 * self.f0) * self.t.norm_sqr()
    }

    /// Channel reflection probability `(1+f0^2)|R|^2`.
    pub fn reflection(&self) -> f64 {
        (1.0 + self.f0 * self.f0) * self.r.norm_sqr()
    }

    /// `(1+f0^2)(|T|^2 + |R|^2) - 1`.
    pub fn unitarity_residual(&self) -> f64 {
        self.transmission() + self.reflection() - 1.0
    }
}

/// The two channel solves at field strength `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinPair {
    /// `U - V` channel (pairs with `u1`).
    pub up: ScatteringResult,
    /// `U + V` channel (pairs with `u2`).
    pub down: ScatteringResult,
    pub v: f64,
}

/// Kinematics of every segment for one channel.
pub(crate) fn segment_kinematics(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    shift: f64,
) -> Result<Vec<ChannelKinematics>> {
    let local_energy = particle.energy - shift;
    barrier
        .segments()
        .iter()
        .map(|s| ChannelKinematics::segment(local_energy, particle.mass, s.height))
        .collect()
}

/// Total field transfer matrix across the barrier, `psi(b) = M psi(a)`.
pub fn barrier_matrix(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    shift: f64,
) -> Result<ScaledTransferMatrix> {
    let kins = segment_kinematics(barrier, particle, shift)?;
    Ok(kins
        .iter()
        .zip(barrier.segments())
        .fold(ScaledTransferMatrix::identity(), |acc, (kin, seg)| {
            acc.then(&ScaledTransferMatrix::segment(kin, seg.length))
        }))
}

fn solve_channel(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    shift: f64,
    channel: Channel,
) -> Result<ScatteringResult> {
    let total = barrier_matrix(barrier, particle, shift)?;
    let (k0, f0) = (particle.k0, particle.f0);
    let free = ChannelKinematics::segment(particle.energy, particle.mass, 0.0)?;
    let p0 = mode_basis(&free);
    let s = p0.inverse() * total.mantissa * p0;
    let inc = Complex64::new(particle.incident_norm(), 0.0);
    let i = Complex64::new(0.0, 1.0);
    let (a, b) = (barrier.start(), barrier.end());
    let s22 = s.m[1][1];
    // det S = 1, so T = inc e^{-ik0(b-a)} / S22.
    let t = inc * (-i * k0 * (b - a)).exp() * (-total.log_scale).exp() / s22;
    let r = -(s.m[1][0] / s22) * inc * (2.0 * i * k0 * a).exp();
    Ok(ScatteringResult::new(t, r, channel, shift, f0))
}

/// Solve one channel whose barrier heights are offset by `shift`.
pub fn scatter_channel(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    shift: f64,
) -> Result<ScatteringResult> {
    solve_channel(barrier, particle, shift, Channel::Unshifted)
}

/// Both spin channels at spin-field strength `V`.
pub fn scatter_spin(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    v: f64,
) -> Result<SpinPair> {
    let up = solve_channel(barrier, particle, -v, Channel::Up)?;
    let down = if v == 0.0 {
        ScatteringResult {
            channel: Channel::Down,
            ..up
        }
    } else {
        solve_channel(barrier, particle, v, Channel::Down)?
    };
    Ok(SpinPair { up, down, v })
}
