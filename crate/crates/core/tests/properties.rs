use larmor_clock::clock::{central_difference, clock_times, FdOptions};
use larmor_clock::profile::PiecewiseBarrier;
use larmor_clock::scattering::{ode_oracle, scatter_channel, scatter_spin};
use larmor_clock::scenario::validate::observed_fd_order;
use larmor_clock::spin::{reflected_spin, summed_spin, transmitted_spin};
use larmor_clock::spinor::SpinOrientation;
use larmor_clock::units::ParticleState;
use proptest::prelude::*;
use std::f64::consts::PI;

fn steps() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.1f64..1.0, 0.0f64..2.0), 1..=10)
}

fn clear_of_threshold(steps: &[(f64, f64)], energy: f64) -> bool {
    steps.iter().all(|&(_, h)| (energy - 1.0 - h).abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unitarity(s in steps(), energy in 1.001f64..5.0, shift in -1e-3f64..1e-3) {
        prop_assume!(clear_of_threshold(&s, energy - shift));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let r = scatter_channel(&b, &p, shift).unwrap();
        prop_assert!(r.unitarity_residual() < 1e-12, "residual {}", r.unitarity_residual());
    }

    #[test]
    fn reciprocity_under_mirroring(s in steps(), energy in 1.05f64..3.0) {
        prop_assume!(clear_of_threshold(&s, energy));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let fwd = scatter_channel(&b, &p, 0.0).unwrap();
        let rev = scatter_channel(&b.mirrored(), &p, 0.0).unwrap();
        prop_assert!((fwd.t.norm() - rev.t.norm()).abs() < 1e-12);
        prop_assert!((fwd.r.norm() - rev.r.norm()).abs() < 1e-12);
    }

    #[test]
    fn splitting_a_segment(s in steps(), energy in 1.05f64..3.0, pick in 0usize..10, t in 0.05f64..0.95) {
        prop_assume!(clear_of_threshold(&s, energy));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let split = b.split_segment(pick % b.len(), t);
        prop_assert_eq!(split.len(), b.len() + 1);
        let p = ParticleState::new(energy, 1.0).unwrap();
        let x = scatter_channel(&b, &p, 0.0).unwrap();
        let y = scatter_channel(&split, &p, 0.0).unwrap();
        prop_assert!((x.t - y.t).norm() < 1e-13, "dT = {}", (x.t - y.t).norm());
        prop_assert!((x.r - y.r).norm() < 1e-13, "dR = {}", (x.r - y.r).norm());
    }

    #[test]
    fn field_derivatives_of_probabilities_cancel(s in steps(), energy in 1.05f64..3.0) {
        let h = 1e-4;
        prop_assume!(clear_of_threshold(&s, energy) && clear_of_threshold(&s, energy + h) && clear_of_threshold(&s, energy - h));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let pair = scatter_spin(&b, &p, h).unwrap();
        let dt2 = (pair.down.transmission() - pair.up.transmission()) / (2.0 * h);
        let dr2 = (pair.down.reflection() - pair.up.reflection()) / (2.0 * h);
        prop_assert!((dt2 + dr2).abs() < 1e-9, "{} vs {}", dt2, dr2);
    }

    #[test]
    fn transfer_matrix_matches_ode(s in prop::collection::vec((0.1f64..1.0, 0.0f64..2.0), 1..=4), energy in 1.05f64..3.0) {
        prop_assume!(clear_of_threshold(&s, energy));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let tm = scatter_channel(&b, &p, 0.0).unwrap();
        let ode = ode_oracle(&b, &p, 0.0).unwrap();
        prop_assert!((tm.t - ode.t).norm() < 1e-6 * tm.t.norm());
        prop_assert!((tm.r - ode.r).norm() < 1e-6);
    }

    #[test]
    fn larmor_equals_dwell(s in steps(), energy in 1.05f64..3.0) {
        prop_assume!(clear_of_threshold(&s, energy));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let t = clock_times(&b, &p, &FdOptions::default()).unwrap();
        prop_assert!(t.converged);
        prop_assert!(t.identity_residual() < 1e-6, "residual {}", t.identity_residual());
    }

    #[test]
    fn outgoing_spin_is_bounded(s in steps(), energy in 1.05f64..3.0, theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), v in 0.0f64..1e-2) {
        prop_assume!(clear_of_threshold(&s, energy - v) && clear_of_threshold(&s, energy + v));
        let b = PiecewiseBarrier::centered(&s).unwrap();
        let p = ParticleState::new(energy, 1.0).unwrap();
        let o = SpinOrientation::new(theta, phi).unwrap();
        let pair = scatter_spin(&b, &p, v).unwrap();
        let (st, sr) = (transmitted_spin(&pair, &o, p.f0), reflected_spin(&pair, &o, p.f0));
        prop_assert!(st.norm() <= 0.5 + 1e-12 && sr.norm() <= 0.5 + 1e-12);
        prop_assert!(summed_spin(&pair, &o, p.f0).norm() <= 0.5 + 1e-12);
    }
}

#[test]
fn central_difference_is_second_order() {
    for &(e, u0, d) in &[
        (1.2, 1.0, 1.0),
        (1.5, 1.0, 0.5),
        (1.1, 0.5, 2.0),
        (2.5, 1.0, 0.7),
    ] {
        let b = PiecewiseBarrier::centered(&[(2.0 * d, u0)]).unwrap();
        let p = ParticleState::new(e, 1.0).unwrap();
        let order = observed_fd_order(&b, &p, 1e-2).unwrap();
        assert!((order - 2.0).abs() < 0.1, "E = {e}: order {order}");
    }
}

#[test]
fn central_difference_matches_small_step() {
    let b = PiecewiseBarrier::centered(&[(0.7, 1.3), (0.4, 0.1)]).unwrap();
    let p = ParticleState::new(1.7, 1.0).unwrap();
    let coarse = central_difference(&b, &p, 1e-4).unwrap();
    let fine = central_difference(&b, &p, 1e-6).unwrap();
    assert!((coarse.0 - fine.0).abs() < 1e-6 * fine.0.abs());
    assert!((coarse.1 - fine.1).abs() < 1e-6 * fine.1.abs());
}
