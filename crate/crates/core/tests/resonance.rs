use std::f64::consts::PI;

use larmor_clock::clock::{clock_times, phase_times, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::scenario::{run_sweep, ScenarioConfig, Spacing, SweepAxis, SweepSpec};
use larmor_clock::units::ParticleState;
use larmor_clock::Error;

/// `p L = pi` at `E = 2`, `L = 2`.
fn resonant_height() -> f64 {
    (4.0 - PI * PI / 4.0).sqrt() - 1.0
}

#[test]
fn identity_survives_resonance() {
    let b = PiecewiseBarrier::centered(&[(2.0, resonant_height())]).unwrap();
    let p = ParticleState::new(2.0, 1.0).unwrap();
    let t = clock_times(&b, &p, &FdOptions::default()).unwrap();
    assert!(t.resonance);
    assert!(t.tau_r.is_none());
    assert!((t.transmission - 1.0).abs() < 1e-12);
    assert!(t.identity_residual() < 1e-6);
    assert!(matches!(
        phase_times(&b, &p, &FdOptions::default()),
        Err(Error::ReflectionVanishes { .. })
    ));
}

#[test]
fn sweep_through_resonance_flags_tau_r() {
    let config = ScenarioConfig::from_json(&format!(
        r#"{{"particle": {{"E": 2.0}}, "field": {{"V": 0.0}},
            "barrier": {{"kind": "rectangular", "U0": {}, "d": 1.0}}}}"#,
        resonant_height()
    ))
    .unwrap();
    let spec = SweepSpec {
        axis: SweepAxis::E,
        start: 1.9,
        stop: 2.1,
        count: 3,
        spacing: Spacing::Linear,
    };
    let rows = run_sweep(&config, &spec).unwrap();
    assert!(rows[1].results.tau_r.is_none());
    assert!(rows[1].csv_row().split(',').nth(14) == Some("NaN"));
    for r in &rows {
        let (l, d) = (r.results.tau_l.unwrap(), r.results.tau_d.unwrap());
        assert!((l - d).abs() < 1e-6 * d);
    }
}
