//! Closed-form transmission time of a symmetric rectangular barrier of
//! height `U0` on `[-d, d]`, valid in the evanescent regime `m < E < m + U0`:
//!
//! ```text
//! tau_T = f0/k * [4dk xi E (k^2 - f0^2 xi^2) + (k^2 + E xi)(k^2 + f0^2 xi^2) sinh(4dk)]
//!              / [4 f0^2 xi^2 k^2 + (k^2 + f0^2 xi^2)^2 sinh^2(2dk)]
//! ```
//!
//! with `xi = m + U0 + E` and `k = sqrt((m + U0)^2 - E^2)`.

use crate::error::{Error, Result};
use crate::units::ParticleState;

/// Distance `m + U0 - E` below which the closed form is not evaluated.
pub const GUARD_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularKinematics {
    pub xi: f64,
    pub kappa: f64,
    pub d: f64,
    pub u0: f64,
    pub particle: ParticleState,
}

impl RectangularKinematics {
    pub fn new(energy: f64, u0: f64, d: f64, mass: f64) -> Result<Self> {
        let particle = ParticleState::new(energy, mass)?;
        let top = mass + u0;
        if energy >= top - GUARD_BAND {
            return Err(Error::NotEvanescent { energy, top });
        }
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::invalid("d", "half width must be >= 0"));
        }
        Ok(Self {
            xi: top + energy,
            kappa: (top * top - energy * energy).sqrt(),
            d,
            u0,
            particle,
        })
    }
}

/// Closed-form `tau_T`; for `4 d k > 40` the ratio is evaluated after
/// dividing through by `sinh^2(2dk)` so it never overflows.
pub fn analytic_rect_tau_t(energy: f64, u0: f64, d: f64, mass: f64) -> Result<f64> {
    let rk = RectangularKinematics::new(energy, u0, d, mass)?;
    let (xi, k, f0) = (rk.xi, rk.kappa, rk.particle.f0);
    let k2 = k * k;
    let g = k2 + f0 * f0 * xi * xi;
    let linear = 4.0 * d * k * xi * energy * (k2 - f0 * f0 * xi * xi);
    let hyper = (k2 + energy * xi) * g;
    let constant = 4.0 * f0 * f0 * xi * xi * k2;
    let x = 2.0 * d * k;
    let ratio = if x < 20.0 {
        (linear + hyper * (2.0 * x).sinh()) / (constant + g * g * x.sinh().powi(2))
    } else {
        // 1/sinh^2(x) = 4 e^{-2x} / (1 - e^{-2x})^2, sinh(2x)/sinh^2(x) = 2 coth(x)
        let q = (-2.0 * x).exp();
        let inv_sinh2 = 4.0 * q / (1.0 - q).powi(2);
        let coth = (1.0 + q) / (1.0 - q);
        (linear * inv_sinh2 + hyper * 2.0 * coth) / (constant * inv_sinh2 + g * g)
    };
    Ok(f0 / k * ratio)
}

/// Opaque-barrier limit of [`analytic_rect_tau_t`]:
/// `2 f0 (k^2 + E xi) / (k (k^2 + f0^2 xi^2))`.
pub fn tau_infinity(energy: f64, u0: f64, mass: f64) -> Result<f64> {
    let rk = RectangularKinematics::new(energy, u0, 1.0, mass)?;
    let (xi, k, f0) = (rk.xi, rk.kappa, rk.particle.f0);
    Ok(2.0 * f0 * (k * k + energy * xi) / (k * (k * k + f0 * f0 * xi * xi)))
}
