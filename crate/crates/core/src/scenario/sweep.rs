//! One-parameter sweeps, evaluated in parallel and emitted in input order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::run_point_in_row;
use super::{OutputRecord, ScenarioConfig, ScenarioError};
use crate::profile::ProfileSpec;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "LARMOR_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    E,
    /// Half-width `d` of a rectangular barrier, or `width` of a Gaussian.
    #[serde(rename = "d")]
    D,
    U0,
    V,
    #[serde(rename = "n_segments")]
    NSegments,
}

impl FromStr for SweepAxis {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" => Ok(SweepAxis::E),
            "d" => Ok(SweepAxis::D),
            "U0" => Ok(SweepAxis::U0),
            "V" => Ok(SweepAxis::V),
            "n_segments" => Ok(SweepAxis::NSegments),
            other => Err(ScenarioError::Config {
                field: "axis".into(),
                message: format!("unknown axis `{other}`; expected E, d, U0, V or n_segments"),
            }),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::E => "E",
            SweepAxis::D => "d",
            SweepAxis::U0 => "U0",
            SweepAxis::V => "V",
            SweepAxis::NSegments => "n_segments",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

fn spec_error(field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(spec_error("start", "range endpoints must be finite"));
        }
        if !(self.start < self.stop) {
            return Err(spec_error(
                "stop",
                format!("need start < stop, got {} >= {}", self.start, self.stop),
            ));
        }
        if self.count < 2 {
            return Err(spec_error("count", "need at least 2 points"));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(spec_error("start", "log spacing needs a positive start"));
        }
        Ok(())
    }

    /// Grid values; the endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    }
                }
            })
            .collect()
    }

    /// Check that `config` has the swept parameter at all.
    pub fn check_applicable(&self, config: &ScenarioConfig) -> Result<(), ScenarioError> {
        let ok = matches!(
            (self.axis, &config.barrier),
            (SweepAxis::E | SweepAxis::V | SweepAxis::NSegments, _)
                | (
                    SweepAxis::D | SweepAxis::U0,
                    ProfileSpec::Rectangular { .. } | ProfileSpec::Gaussian { .. }
                )
        );
        if ok {
            Ok(())
        } else {
            Err(spec_error(
                "axis",
                format!(
                    "axis `{}` needs a rectangular or gaussian barrier",
                    self.axis
                ),
            ))
        }
    }

    /// `config` with the swept parameter set to `value`.
    pub fn apply(&self, config: &ScenarioConfig, value: f64) -> ScenarioConfig {
        let mut c = config.clone();
        match self.axis {
            SweepAxis::E => c.particle.energy = value,
            SweepAxis::V => c.field.v = value,
            SweepAxis::NSegments => c.numerics.n_segments = value.round().max(0.0) as usize,
            SweepAxis::D => match &mut c.barrier {
                ProfileSpec::Rectangular { d, .. } => *d = value,
                ProfileSpec::Gaussian { width, .. } => *width = value,
                _ => {}
            },
            SweepAxis::U0 => match &mut c.barrier {
                ProfileSpec::Rectangular { u0, .. } | ProfileSpec::Gaussian { u0, .. } => {
                    *u0 = value
                }
                _ => {}
            },
        }
        c
    }
}

/// Rayon pool sized by `LARMOR_THREADS`, or all logical cores when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool, ScenarioError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
            spec_error(
                THREADS_ENV,
                format!("expected a positive integer, got `{raw}`"),
            )
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| spec_error(THREADS_ENV, e.to_string()))
}

/// Evaluate every grid point. The base config and the sweep are validated
/// up front; per-point failures become `converged = false` rows.
pub fn run_sweep(
    config: &ScenarioConfig,
    spec: &SweepSpec,
) -> Result<Vec<OutputRecord>, ScenarioError> {
    config.validate()?;
    spec.validate()?;
    spec.check_applicable(config)?;
    let pool = thread_pool()?;
    let values = spec.values();
    Ok(pool.install(|| {
        values
            .par_iter()
            .map(|&v| run_point_in_row(spec.apply(config, v), v))
            .collect()
    }))
}
