//! Barrier-width sweeps showing saturation of the transmission time.

use rayon::prelude::*;

use super::{analytic_rect_tau_t, channel_times, free_traversal_time, FdOptions};
use crate::error::Result;
use crate::profile::PiecewiseBarrier;
use crate::units::ParticleState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HartmanPoint {
    /// Half width.
    pub d: f64,
    /// Numerical transmission time from phase derivatives.
    pub tau_t: f64,
    /// Closed-form transmission time.
    pub tau_t_analytic: f64,
    /// Free flight across the full width `2d`.
    pub tau_free: f64,
    /// `tau_t / tau_free`; `None` for `d = 0`.
    pub ratio: Option<f64>,
}

impl HartmanPoint {
    pub fn is_superluminal(&self) -> bool {
        self.ratio.is_some_and(|r| r < 1.0)
    }
}

/// Transmission time vs. half width at fixed `E`, `U0`, `m`.
///
/// Points are computed in parallel and returned in input order.
pub fn hartman_sweep(
    energy: f64,
    u0: f64,
    mass: f64,
    d_list: &[f64],
    opts: &FdOptions,
) -> Result<Vec<HartmanPoint>> {
    let particle = ParticleState::new(energy, mass)?;
    d_list
        .par_iter()
        .map(|&d| {
            let tau_t_analytic = analytic_rect_tau_t(energy, u0, d, mass)?;
            if d == 0.0 {
                return Ok(HartmanPoint {
                    d,
                    tau_t: 0.0,
                    tau_t_analytic,
                    tau_free: 0.0,
                    ratio: None,
                });
            }
            let barrier = PiecewiseBarrier::centered(&[(2.0 * d, u0)])?;
            let tau_t = channel_times(&barrier, &particle, opts)?.tau_t;
            let tau_free = free_traversal_time(&particle, 2.0 * d);
            Ok(HartmanPoint {
                d,
                tau_t,
                tau_t_analytic,
                tau_free,
                ratio: Some(tau_t / tau_free),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::tau_infinity;

    #[test]
    fn saturates_while_free_time_grows() {
        let ds = [0.0, 0.25, 0.5, 1.0, 2.0, 5.0];
        let pts = hartman_sweep(1.2, 1.0, 1.0, &ds, &FdOptions::default()).unwrap();
        let inf = tau_infinity(1.2, 1.0, 1.0).unwrap();
        assert_eq!(pts[0].tau_t, 0.0);
        assert!((pts[3].tau_t - 0.693_773_057_852_265_7).abs() < 1e-8);
        assert!((pts[3].tau_free - 3.618_136_134_933_163).abs() < 1e-12);
        assert!((pts[5].tau_t - inf).abs() < 1e-8);
        for w in pts.windows(2) {
            assert!(w[1].tau_free > w[0].tau_free);
        }
        assert!(pts
            .iter()
            .filter(|p| 2.0 * p.d > 1.0)
            .all(|p| p.is_superluminal()));
        // continuous towards zero width
        assert!(pts[1].tau_t < pts[2].tau_t);
    }
}
