//! Spin coherent states and four-component spinors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Polarization axis `n = (sin theta cos phi, sin theta sin phi, cos theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOrientation {
    pub theta: f64,
    pub phi: f64,
}

impl SpinOrientation {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(Error::invalid(
                "theta",
                format!("polar angle must lie in [0, pi], got {theta}"),
            ));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", "azimuth must be finite"));
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        })
    }

    /// `u1 = cos(theta/2) e^{-i phi/2}`.
    pub fn u1(&self) -> Complex64 {
        Complex64::from_polar((0.5 * self.theta).cos(), -0.5 * self.phi)
    }

    /// `u2 = sin(theta/2) e^{i phi/2}`.
    pub fn u2(&self) -> Complex64 {
        Complex64::from_polar((0.5 * self.theta).sin(), 0.5 * self.phi)
    }
}

/// Dirac spinor in the Pauli representation, components `psi_1 .. psi_4`.
///
/// For the scattering states the layout is `(u1 ., u2 ., f u2 ., f u1 .)`:
/// components 1 and 4 form the `u1` channel, 2 and 3 the `u2` channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourSpinor(pub [Complex64; 4]);

impl FourSpinor {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Spinor built from the two channel amplitudes: `c_up` multiplies `u1`
    /// in components 1 and 4, `c_down` multiplies `u2` in components 2 and 3,
    /// with lower components scaled by `lower`.
    pub fn from_channels(
        orientation: &SpinOrientation,
        c_up: Complex64,
        c_down: Complex64,
        lower: f64,
    ) -> Self {
        let (u1, u2) = (orientation.u1(), orientation.u2());
        FourSpinor([
            c_up * u1,
            c_down * u2,
            lower * c_down * u2,
            lower * c_up * u1,
        ])
    }
}

/// Normalized incident state `(u1, u2, f0 u2, f0 u1) / sqrt(1 + f0^2)`.
pub fn spin_coherent_spinor(orientation: &SpinOrientation, f0: f64) -> FourSpinor {
    let n = Complex64::new(1.0 / (1.0 + f0 * f0).sqrt(), 0.0);
    FourSpinor::from_channels(orientation, n, n, f0)
}
