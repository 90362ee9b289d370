//! Output records and their CSV form.

use std::io::Write;

use serde::Serialize;

use super::{ScenarioConfig, ScenarioError};
use crate::clock::{clock_times, free_traversal_time};
use crate::scattering::{scatter_channel, scatter_spin, ScatteringResult};
use crate::spin::summed_spin;

/// Fixed column order of every CSV file.
pub const CSV_HEADER: &str =
    "axis_value,E,m,V,theta,phi,n_segments,T_re,T_im,R_re,R_im,alpha,beta,\
tau_T,tau_R,tau_L,tau_D,tau_free,s1,s2,s3,unitarity_residual,converged";

/// Computed quantities. Amplitudes and phases refer to the `V = 0` channel;
/// `s1..s3` is the summed outgoing spin at the configured `V`. Undefined
/// values are `None` (JSON `null`, CSV `NaN`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordResults {
    #[serde(rename = "T_re")]
    pub t_re: Option<f64>,
    #[serde(rename = "T_im")]
    pub t_im: Option<f64>,
    #[serde(rename = "R_re")]
    pub r_re: Option<f64>,
    #[serde(rename = "R_im")]
    pub r_im: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "tau_T")]
    pub tau_t: Option<f64>,
    #[serde(rename = "tau_R")]
    pub tau_r: Option<f64>,
    #[serde(rename = "tau_L")]
    pub tau_l: Option<f64>,
    #[serde(rename = "tau_D")]
    pub tau_d: Option<f64>,
    pub tau_free: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub s3: Option<f64>,
    pub unitarity_residual: Option<f64>,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RecordResults {
    fn failed(reason: String) -> Self {
        Self {
            t_re: None,
            t_im: None,
            r_re: None,
            r_im: None,
            alpha: None,
            beta: None,
            tau_t: None,
            tau_r: None,
            tau_l: None,
            tau_d: None,
            tau_free: None,
            s1: None,
            s2: None,
            s3: None,
            unitarity_residual: None,
            converged: false,
            error: Some(reason),
        }
    }

    fn floats(&self) -> [Option<f64>; 15] {
        [
            self.t_re,
            self.t_im,
            self.r_re,
            self.r_im,
            self.alpha,
            self.beta,
            self.tau_t,
            self.tau_r,
            self.tau_l,
            self.tau_d,
            self.tau_free,
            self.s1,
            self.s2,
            self.s3,
            self.unitarity_residual,
        ]
    }

    /// Largest absolute difference over all numeric fields; `None` pairs
    /// match, `None` against a number counts as infinite.
    pub fn max_abs_diff(&self, other: &RecordResults) -> f64 {
        self.floats()
            .iter()
            .zip(other.floats().iter())
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => (x - y).abs(),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub config: ScenarioConfig,
    /// Swept parameter value, `None` for single runs.
    pub axis_value: Option<f64>,
    pub results: RecordResults,
}

fn some_finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn compute(config: &ScenarioConfig) -> Result<RecordResults, ScenarioError> {
    let prep = config.prepare()?;
    let (barrier, particle) = (&prep.barrier, &prep.particle);
    let times = clock_times(barrier, particle, &prep.fd)?;
    let base: ScatteringResult = scatter_channel(barrier, particle, 0.0)?;
    let pair = scatter_spin(barrier, particle, config.field.v)?;
    let spin = summed_spin(&pair, &prep.orientation, particle.f0);
    let residual = base
        .unitarity_residual()
        .max(pair.up.unitarity_residual())
        .max(pair.down.unitarity_residual());
    let converged = times.converged && residual < config.numerics.unitarity_tol;
    Ok(RecordResults {
        t_re: some_finite(base.t.re),
        t_im: some_finite(base.t.im),
        r_re: some_finite(base.r.re),
        r_im: some_finite(base.r.im),
        alpha: some_finite(base.alpha),
        beta: (!times.resonance).then_some(base.beta),
        tau_t: some_finite(times.tau_t),
        tau_r: times.tau_r,
        tau_l: some_finite(times.tau_l),
        tau_d: some_finite(times.tau_d),
        tau_free: some_finite(free_traversal_time(particle, barrier.total_length())),
        s1: some_finite(spin.s1),
        s2: some_finite(spin.s2),
        s3: some_finite(spin.s3),
        unitarity_residual: some_finite(residual),
        converged,
        error: None,
    })
}

/// Single-point computation. Config errors are returned before any solve;
/// solver errors are returned as [`ScenarioError::Solver`].
pub fn run_point(config: &ScenarioConfig) -> Result<OutputRecord, ScenarioError> {
    Ok(OutputRecord {
        config: config.clone(),
        axis_value: None,
        results: compute(config)?,
    })
}

/// Like [`run_point`], but any failure becomes a `converged = false` row.
pub(crate) fn run_point_in_row(config: ScenarioConfig, axis_value: f64) -> OutputRecord {
    let results = compute(&config).unwrap_or_else(|e| RecordResults::failed(e.to_string()));
    OutputRecord {
        config,
        axis_value: Some(axis_value),
        results,
    }
}

fn fmt_float(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.16e}"),
        None => "NaN".to_string(),
    }
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    /// One CSV row, floats to 17 significant digits.
    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let mut cols = vec![
            fmt_float(self.axis_value),
            fmt_float(Some(c.particle.energy)),
            fmt_float(Some(c.particle.m)),
            fmt_float(Some(c.field.v)),
            fmt_float(Some(c.spin.theta)),
            fmt_float(Some(c.spin.phi)),
            c.numerics.n_segments.to_string(),
        ];
        cols.extend(self.results.floats().iter().map(|x| fmt_float(*x)));
        cols.push(self.results.converged.to_string());
        cols.join(",")
    }
}

/// Header plus one row per record.
pub fn write_csv<W: Write>(mut out: W, records: &[OutputRecord]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ScenarioConfig {
        ScenarioConfig::from_json(text).unwrap()
    }

    const RECT: &str = r#"{"particle": {"E": 1.2}, "field": {"V": 1e-6},
        "barrier": {"kind": "rectangular", "U0": 1.0, "d": 1.0}}"#;

    #[test]
    fn rectangular_record() {
        let rec = run_point(&config(RECT)).unwrap();
        let r = &rec.results;
        assert!(r.converged);
        assert!((r.tau_t.unwrap() - 0.6938).abs() < 5e-5);
        assert!((r.tau_l.unwrap() - r.tau_d.unwrap()).abs() < 1e-6 * r.tau_d.unwrap());
        assert_eq!(
            rec.csv_row().split(',').count(),
            CSV_HEADER.split(',').count()
        );
    }

    #[test]
    fn free_row() {
        let text = r#"{"particle": {"E": 1.5}, "field": {"V": 0.0},
            "barrier": {"kind": "piecewise", "segments": [[2.0, 0.0]]}}"#;
        let r = run_point(&config(text)).unwrap().results;
        let expected = 2.0 * 1.5 / (1.5f64 * 1.5 - 1.0).sqrt();
        assert!((r.tau_t.unwrap() - expected).abs() < 1e-8);
        assert!((r.tau_d.unwrap() - expected).abs() < 1e-12);
        assert!(r.tau_r.is_none());
        assert!(r.converged);
    }

    #[test]
    fn failed_rows_are_flagged() {
        let rec = run_point_in_row(config(&RECT.replace("1.2", "0.9")), 0.9);
        assert!(!rec.results.converged);
        assert!(rec.csv_row().ends_with(",false"));
        assert!(rec.csv_row().contains("NaN"));
    }

    #[test]
    fn tight_tolerance_clears_converged() {
        let text = r#"{"particle": {"E": 1.3}, "field": {"V": 1e-6},
            "barrier": {"kind": "gaussian", "U0": 1.0, "width": 0.5},
            "numerics": {"n_segments": 4096, "unitarity_tol": 1e-20}}"#;
        let r = run_point(&config(text)).unwrap().results;
        assert!(r.unitarity_residual.unwrap() > 0.0);
        assert!(!r.converged);
    }
}
