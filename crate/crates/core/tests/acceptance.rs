//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on failure.

use std::process::ExitCode;

use larmor_clock::clock::{analytic_rect_tau_t, phase_times, tau_infinity, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::scenario::validate::{run_suite, Suite, SuiteReport, ValidationSettings};
use larmor_clock::units::ParticleState;

/// Closed-form rectangular `tau_T(E = 1.2, U0 = 1, d = 1)`, evaluated
/// independently in extended precision.
const TAU_T_REFERENCE: f64 = 0.693_773_057_852_265_7;
/// Opaque limit at `E = 1.2`, `U0 = 1`.
const TAU_INF_REFERENCE: f64 = 0.690_963_497_990_708_1;

fn frozen_checks(suite: Suite) -> Vec<(String, bool)> {
    match suite {
        Suite::ClosedForm => {
            let p = ParticleState::new(1.2, 1.0).unwrap();
            let b = PiecewiseBarrier::centered(&[(2.0, 1.0)]).unwrap();
            let numeric = phase_times(&b, &p, &FdOptions::default()).unwrap().0;
            let exact = analytic_rect_tau_t(1.2, 1.0, 1.0, 1.0).unwrap();
            vec![
                (
                    format!("numeric tau_T {numeric:.12} vs reference"),
                    (numeric - TAU_T_REFERENCE).abs() < 1e-8,
                ),
                (
                    format!("closed form {exact:.15} vs reference"),
                    (exact - TAU_T_REFERENCE).abs() < 1e-12,
                ),
            ]
        }
        Suite::Hartman => {
            let t = tau_infinity(1.2, 1.0, 1.0).unwrap();
            vec![(
                format!("tau_inf {t:.15} vs reference"),
                (t - TAU_INF_REFERENCE).abs() < 1e-12,
            )]
        }
        _ => Vec::new(),
    }
}

fn report(index: usize, r: &SuiteReport, extra: &[(String, bool)]) -> bool {
    let ok = r.passed && extra.iter().all(|(_, p)| *p);
    println!(
        "criterion {index}: {} {} ({} cases, {:.3} s, budget {} s)",
        if ok { "PASS" } else { "FAIL" },
        r.name,
        r.cases,
        r.elapsed_s,
        r.budget_s
    );
    for c in &r.checks {
        let worst = c.worst.map_or("error".into(), |w| format!("{w:.3e}"));
        println!(
            "    {} {} worst {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            worst
        );
    }
    for (name, passed) in extra {
        println!("    {} {}", if *passed { "ok  " } else { "FAIL" }, name);
    }
    for v in r.violations() {
        println!("    violated: {v}");
    }
    ok
}

fn main() -> ExitCode {
    let settings = ValidationSettings::default();
    let mut all = true;
    for (i, suite) in Suite::ALL.iter().enumerate() {
        let r = run_suite(*suite, &settings);
        all &= report(i + 1, &r, &frozen_checks(*suite));
    }
    println!(
        "acceptance: {}",
        if all { "all criteria pass" } else { "FAILED" }
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
