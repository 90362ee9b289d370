//! Unit conventions and particle/field parameters.
//!
//! Everything in this crate works in natural units with `hbar = c = 1`.
//! Energies are measured in units of the rest energy `m c^2`, lengths in
//! `hbar / (m c)` and times in `hbar / (m c^2)` when `m = 1`. Conversion to SI
//! is a display concern and lives in [`crate::scenario::si`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The unit convention used by every public quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    /// Rest mass; the energy scale is `mass * c^2`.
    pub mass: f64,
}

impl Units {
    pub const CONVENTION: &'static str = "natural units: hbar = c = 1";

    pub fn new(mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid(
                "m",
                format!("mass must be positive, got {mass}"),
            ));
        }
        Ok(Self { mass })
    }
}

impl Default for Units {
    fn default() -> Self {
        Self { mass: 1.0 }
    }
}

/// Free-particle asymptotic state: energy, momentum `k0` and the
/// lower/upper spinor ratio `f0 = k0 / (m + E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    pub energy: f64,
    pub mass: f64,
    pub k0: f64,
    pub f0: f64,
}

impl ParticleState {
    pub fn new(energy: f64, mass: f64) -> Result<Self> {
        Units::new(mass)?;
        if !energy.is_finite() {
            return Err(Error::invalid("E", "energy must be finite"));
        }
        let gap = energy * energy - mass * mass;
        if gap.abs() < crate::kinematics::THRESHOLD_GAP {
            return Err(Error::ThresholdEnergy { gap });
        }
        if energy <= mass {
            return Err(Error::SubRestEnergy { energy, mass });
        }
        let k0 = gap.sqrt();
        Ok(Self {
            energy,
            mass,
            k0,
            f0: k0 / (mass + energy),
        })
    }

    /// Probability current of the normalized incident wave, `2 f0 / (1 + f0^2)`.
    ///
    /// Equal to the group velocity `k0 / E`.
    pub fn incident_flux(&self) -> f64 {
        2.0 * self.f0 / (1.0 + self.f0 * self.f0)
    }

    /// `v = k0 / E`.
    pub fn group_velocity(&self) -> f64 {
        self.k0 / self.energy
    }

    /// Normalization `1 / sqrt(1 + f0^2)` of the incident spinor.
    pub fn incident_norm(&self) -> f64 {
        1.0 / (1.0 + self.f0 * self.f0).sqrt()
    }
}

/// Spin-field coupling confined to the barrier support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    /// Spin-field interaction energy `V = mu B = hbar omega_L / 2`.
    pub v: f64,
    /// Field region, identical to the barrier support `[a, b]`.
    pub region: (f64, f64),
}

impl FieldParams {
    pub fn new(v: f64, region: (f64, f64)) -> Result<Self> {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::invalid(
                "V",
                format!("field strength must be >= 0, got {v}"),
            ));
        }
        if !(region.1 > region.0) {
            return Err(Error::invalid("region", "field region must have b > a"));
        }
        Ok(Self { v, region })
    }

    /// Larmor frequency, `omega_L = 2 V`.
    pub fn omega_l(&self) -> f64 {
        larmor_frequency(self.v)
    }
}

pub fn larmor_frequency(v: f64) -> f64 {
    2.0 * v
}
