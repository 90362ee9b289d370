//! Scenario files: JSON in natural units (`hbar = c = 1`, energies in `m c^2`).
//!
//! ```json
//! {
//!   "particle": { "E": 1.2, "m": 1.0 },
//!   "field": { "V": 1e-6 },
//!   "barrier": { "kind": "rectangular", "U0": 1.0, "d": 1.0 },
//!   "spin": { "theta": 1.5707963267948966, "phi": 0.0 },
//!   "numerics": { "n_segments": 1024, "fd_step": 1e-6, "unitarity_tol": 1e-8 }
//! }
//! ```
//!
//! `spin` and `numerics` are optional. `n_segments` only matters for
//! `sampled`/`gaussian` barriers; rectangular and piecewise barriers are
//! solved exactly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::clock::FdOptions;
use crate::profile::{make_profile, BarrierProfile, PiecewiseBarrier, ProfileSpec};
use crate::spinor::SpinOrientation;
use crate::units::ParticleState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleConfig {
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(default = "default_mass")]
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    #[serde(rename = "V")]
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinConfig {
    pub theta: f64,
    pub phi: f64,
}

impl Default for SpinConfig {
    fn default() -> Self {
        Self {
            theta: 0.5 * PI,
            phi: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    #[serde(default = "default_segments")]
    pub n_segments: usize,
    #[serde(default = "default_fd_step")]
    pub fd_step: f64,
    #[serde(default = "default_unitarity_tol")]
    pub unitarity_tol: f64,
    #[serde(default)]
    pub richardson: bool,
    #[serde(default = "default_halving_tol")]
    pub halving_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            n_segments: default_segments(),
            fd_step: default_fd_step(),
            unitarity_tol: default_unitarity_tol(),
            richardson: false,
            halving_tol: default_halving_tol(),
        }
    }
}

fn default_mass() -> f64 {
    1.0
}
fn default_segments() -> usize {
    1024
}
fn default_fd_step() -> f64 {
    1e-6
}
fn default_unitarity_tol() -> f64 {
    1e-8
}
fn default_halving_tol() -> f64 {
    1e-4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub particle: ParticleConfig,
    pub field: FieldConfig,
    pub barrier: ProfileSpec,
    #[serde(default)]
    pub spin: SpinConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
}

/// A config after validation, with every derived object built.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub particle: ParticleState,
    pub profile: BarrierProfile,
    pub barrier: PiecewiseBarrier,
    pub orientation: SpinOrientation,
    pub fd: FdOptions,
}

fn field_error(field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

fn finite(field: &str, x: f64) -> Result<(), ScenarioError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(field_error(field, format!("must be finite, got {x}")))
    }
}

impl ScenarioConfig {
    /// Parse a scenario, or the `config` block of an emitted record.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| field_error("<root>", e.to_string()))?;
        let value = match value.get("config") {
            Some(inner) if value.get("results").is_some() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(value).map_err(|e| field_error("<schema>", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validate every range before any solve; errors name the offending field.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let p = &self.particle;
        finite("particle.m", p.m)?;
        if p.m <= 0.0 {
            return Err(field_error(
                "particle.m",
                format!("rest mass must be positive, got {}", p.m),
            ));
        }
        finite("particle.E", p.energy)?;
        if p.energy <= p.m {
            return Err(field_error(
                "particle.E",
                format!(
                    "energy {} must exceed the rest energy m = {}",
                    p.energy, p.m
                ),
            ));
        }
        finite("field.V", self.field.v)?;
        if self.field.v < 0.0 {
            return Err(field_error("field.V", "spin-field strength must be >= 0"));
        }
        finite("spin.theta", self.spin.theta)?;
        if !(0.0..=PI).contains(&self.spin.theta) {
            return Err(field_error("spin.theta", "polar angle must lie in [0, pi]"));
        }
        finite("spin.phi", self.spin.phi)?;
        let n = &self.numerics;
        if n.n_segments == 0 {
            return Err(field_error("numerics.n_segments", "must be >= 1"));
        }
        if !(n.fd_step.is_finite() && n.fd_step > 0.0) {
            return Err(field_error("numerics.fd_step", "must be positive"));
        }
        if !(n.unitarity_tol.is_finite() && n.unitarity_tol > 0.0) {
            return Err(field_error("numerics.unitarity_tol", "must be positive"));
        }
        if !(n.halving_tol.is_finite() && n.halving_tol > 0.0) {
            return Err(field_error("numerics.halving_tol", "must be positive"));
        }
        make_profile(&self.barrier).map_err(|e| field_error("barrier", e.to_string()))?;
        Ok(())
    }

    pub fn prepare(&self) -> Result<Prepared, ScenarioError> {
        self.validate()?;
        let particle = ParticleState::new(self.particle.energy, self.particle.m)?;
        let profile =
            make_profile(&self.barrier).map_err(|e| field_error("barrier", e.to_string()))?;
        let barrier = profile.to_piecewise(self.numerics.n_segments)?;
        let orientation = SpinOrientation::new(self.spin.theta, self.spin.phi)
            .map_err(|e| field_error("spin", e.to_string()))?;
        let fd = FdOptions {
            step: self.numerics.fd_step,
            richardson: self.numerics.richardson,
            halving_tol: self.numerics.halving_tol,
        };
        Ok(Prepared {
            particle,
            profile,
            barrier,
            orientation,
            fd,
        })
    }
}
