use thiserror::Error;

/// Errors produced by the solvers and clock computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate momentum: |E^2 - (m+W)^2| = {gap:e} is below threshold")]
    ThresholdEnergy { gap: f64 },

    #[error("energy {energy} does not exceed the rest energy {mass}")]
    SubRestEnergy { energy: f64, mass: f64 },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("malformed barrier profile: {0}")]
    MalformedProfile(String),

    #[error("exponent overflow: |Im p| * L = {exponent} exceeds 700")]
    Overflow { exponent: f64 },

    #[error("ODE integrator failure at x = {x}: {reason}")]
    IntegratorFailure { x: f64, reason: String },

    #[error("reflection vanishes (|R|^2 = {r2:e}); reflection phase is undefined")]
    ReflectionVanishes { r2: f64 },

    #[error("finite-difference step too large: halving the step changed `{quantity}` by {rel_change:e} (relative)")]
    StepTooLarge {
        quantity: &'static str,
        rel_change: f64,
    },

    #[error("energy {energy} is not in the evanescent regime (m + U0 = {top})")]
    NotEvanescent { energy: f64, top: f64 },

    #[error("spin orientation too close to the pole (sin theta = {sin_theta:e})")]
    PoleOrientation { sin_theta: f64 },

    #[error("ultra-relativistic degeneracy: 1 - f0^2 = {gap:e}")]
    UltraRelativisticDegeneracy { gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
