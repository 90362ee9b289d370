use larmor_clock::profile::{
    discretize, make_profile, BarrierProfile, ProfileSpec, DEFAULT_GAUSSIAN_NODES,
};
use larmor_clock::scattering::scatter_channel;
use larmor_clock::units::ParticleState;

/// `|T(n_{k+1}) - T(n_k)|` along the refinement sequence.
fn refinement(profile: &BarrierProfile, energy: f64, ns: &[usize]) -> Vec<f64> {
    let p = ParticleState::new(energy, 1.0).unwrap();
    let t: Vec<_> = ns
        .iter()
        .map(|&n| {
            scatter_channel(&discretize(profile, n).unwrap(), &p, 0.0)
                .unwrap()
                .t
        })
        .collect();
    t.windows(2).map(|w| (w[1] - w[0]).norm()).collect()
}

#[test]
fn gaussian_refinement_is_cauchy() {
    let ns: Vec<usize> = (7..=15).map(|k| 1 << k).collect();
    for &(u0, width, energy) in &[(0.8, 0.6, 1.3), (1.5, 0.3, 1.6), (0.4, 1.0, 2.2)] {
        let profile = BarrierProfile::gaussian(u0, width, DEFAULT_GAUSSIAN_NODES).unwrap();
        let deltas = refinement(&profile, energy, &ns);
        assert!(
            deltas.windows(2).all(|w| w[1] < w[0]),
            "not monotone: {deltas:?}"
        );
        // midpoint sampling: each doubling divides the difference by ~4
        for w in deltas[2..].windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio} in {deltas:?}");
        }
        let last = *deltas.last().unwrap();
        assert!(last < 1e-8, "|T(16384) - T(32768)| = {last:e}");
    }
}

#[test]
fn rectangular_is_exact_for_any_n() {
    let profile = make_profile(&ProfileSpec::Rectangular { u0: 1.0, d: 1.0 }).unwrap();
    let p = ParticleState::new(1.2, 1.0).unwrap();
    let one = scatter_channel(&discretize(&profile, 1).unwrap(), &p, 0.0).unwrap();
    for n in [2, 7, 64, 1000] {
        let many = scatter_channel(&discretize(&profile, n).unwrap(), &p, 0.0).unwrap();
        assert!((many.t - one.t).norm() < 1e-13);
    }
}
