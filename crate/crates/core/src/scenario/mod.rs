//! Scenario runner: JSON configs in, records and reports out.
//!
//! This is the layer behind the `larmor` binary. Everything here is in
//! natural units; [`si`] converts for display only.

pub mod config;
pub mod record;
pub mod si;
pub mod sweep;
pub mod validate;

pub use config::{
    FieldConfig, NumericsConfig, ParticleConfig, Prepared, ScenarioConfig, SpinConfig,
};
pub use record::{run_point, OutputRecord, RecordResults, CSV_HEADER};
pub use si::SiDisplay;
pub use sweep::{run_sweep, thread_pool, Spacing, SweepAxis, SweepSpec};
pub use validate::{
    run_validation, CheckResult, Suite, SuiteReport, ValidationReport, ValidationSettings,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("solver error: {0}")]
    Solver(#[from] crate::Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl ScenarioError {
    /// Process exit code: 2 for config and i/o errors, 3 for solver errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config { .. } | ScenarioError::Io { .. } => 2,
            ScenarioError::Solver(_) => 3,
        }
    }
}
