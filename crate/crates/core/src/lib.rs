//! Relativistic Larmor-clock tunneling times.
//!
//! A neutral spin-1/2 particle described by the Dirac-Pauli equation crosses
//! a one-dimensional scalar barrier `U(x)` on `[a, b]`, inside which a weak
//! magnetic field along `z` makes its spin precess. This crate solves the
//! stationary scattering problem per spin channel and computes the clock
//! times:
//!
//! - `tau_T`, `tau_R`: phase sensitivities of the transmitted and reflected
//!   amplitudes to the spin-field coupling ([`clock::phase_times`]),
//! - `tau_L`: the Larmor time, their probability-weighted average
//!   ([`clock::larmor_time`]), also readable directly off the precessed spin
//!   ([`spin::larmor_readout`]),
//! - `tau_D`: the dwell time ([`clock::dwell_time`]).
//!
//! The central check is `tau_L = tau_D` for arbitrary barriers. Natural units
//! (`hbar = c = 1`) are used throughout; see [`units`].
//!
//! ```
//! use larmor_clock::{clock, profile::PiecewiseBarrier, units::ParticleState};
//!
//! let barrier = PiecewiseBarrier::centered(&[(2.0, 1.0)]).unwrap();
//! let particle = ParticleState::new(1.2, 1.0).unwrap();
//! let times = clock::clock_times(&barrier, &particle, &Default::default()).unwrap();
//! assert!((times.tau_t - 0.6938).abs() < 1e-4);
//! assert!(times.identity_residual() < 1e-6);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clock;
pub mod error;
pub mod kinematics;
pub mod profile;
pub mod scattering;
pub mod scenario;
pub mod spin;
pub mod spinor;
pub mod units;

pub use error::{Error, Result};
