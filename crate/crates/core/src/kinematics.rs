//! Per-segment plane-wave kinematics of one spin channel.
//!
//! Inside a segment of constant scalar potential `W` the channel spinor
//! `(phi, chi)` obeys
//!
//! ```text
//! -i chi' = (E - m - W) phi,    -i phi' = (E + m + W) chi
//! ```
//!
//! so plane waves `e^{+-ipx}` carry `p^2 = E^2 - (m + W)^2` and
//! `chi = +-f phi` with `f = p / (E + m + W)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this `|E^2 - (m+W)^2|` the momentum is treated as degenerate.
pub const THRESHOLD_GAP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelKinematics {
    /// Local energy seen by the channel (total energy minus any channel energy shift).
    pub energy: f64,
    pub mass: f64,
    /// Effective scalar potential of the segment.
    pub w: f64,
    /// Longitudinal momentum, `Im p >= 0`, and `Re p > 0` when real.
    pub p: Complex64,
    /// Component ratio `p / (E + m + W)`.
    pub f: Complex64,
}

impl ChannelKinematics {
    /// Kinematics for a segment without the `E > m` precondition.
    ///
    /// Used for interior segments, where the local energy can sit below
    /// `m + W` (evanescent) or be shifted by the spin-field coupling.
    pub fn segment(energy: f64, mass: f64, w: f64) -> Result<Self> {
        if !(energy.is_finite() && w.is_finite()) {
            return Err(Error::invalid("W", "energy and potential must be finite"));
        }
        let big_m = mass + w;
        let gap = energy * energy - big_m * big_m;
        if gap.abs() < THRESHOLD_GAP {
            return Err(Error::ThresholdEnergy { gap });
        }
        let p = if gap > 0.0 {
            Complex64::new(gap.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-gap).sqrt())
        };
        let f = p / (energy + big_m);
        Ok(Self {
            energy,
            mass,
            w,
            p,
            f,
        })
    }

    pub fn is_evanescent(&self) -> bool {
        self.p.im > 0.0
    }

    /// Decay constant `kappa = Im p` (zero for propagating segments).
    pub fn kappa(&self) -> f64 {
        self.p.im
    }

    /// `E + m + W`; coefficient linking `chi` to `phi'`.
    pub(crate) fn upper_coupling(&self) -> f64 {
        self.energy + self.mass + self.w
    }

    /// `E - m - W`; coefficient linking `phi` to `chi'`.
    pub(crate) fn lower_coupling(&self) -> f64 {
        self.energy - self.mass - self.w
    }
}

/// Kinematics of one channel in a segment of scalar potential `w`.
///
/// Requires `E > m` so that the asymptotic free region propagates.
pub fn kinematics(energy: f64, mass: f64, w: f64) -> Result<ChannelKinematics> {
    let kin = ChannelKinematics::segment(energy, mass, w)?;
    if energy <= mass {
        return Err(Error::SubRestEnergy { energy, mass });
    }
    Ok(kin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn free_region_at_sqrt2() {
        let k = kinematics(2f64.sqrt(), 1.0, 0.0).unwrap();
        assert!((k.p - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((k.f.re - 0.414_213_562_373_095).abs() < 1e-12);
        assert_eq!(k.f.im, 0.0);
    }

    #[test]
    fn evanescent_branch() {
        let k = kinematics(1.2, 1.0, 1.0).unwrap();
        assert!((k.p - Complex64::new(0.0, 1.6)).norm() < 1e-14);
        assert!((k.f - Complex64::new(0.0, 0.5)).norm() < 1e-14);
        assert!(k.is_evanescent());
        assert!((k.kappa() - 1.6).abs() < 1e-14);
    }

    #[test]
    fn threshold_is_an_error() {
        assert!(matches!(
            kinematics(1.0, 1.0, 0.0),
            Err(Error::ThresholdEnergy { .. })
        ));
        assert!(matches!(
            kinematics(0.5, 1.0, 0.0),
            Err(Error::SubRestEnergy { .. })
        ));
        assert!(kinematics(2.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn matches_particle_state() {
        let s = crate::units::ParticleState::new(1.7, 1.0).unwrap();
        let k = kinematics(1.7, 1.0, 0.0).unwrap();
        assert!((k.p.re - s.k0).abs() < 1e-15);
        assert!((k.f.re - s.f0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn momentum_branch(e in 1.0001f64..6.0, w in -0.9f64..4.0) {
            if let Ok(k) = kinematics(e, 1.0, w) {
                prop_assert!(k.p.im >= 0.0);
                prop_assert_eq!(k.p.re * k.p.im, 0.0);
                if k.p.im == 0.0 {
                    prop_assert!(k.p.re > 0.0);
                }
                let big_m = 1.0 + w;
                let resid = k.p * k.p - (e * e - big_m * big_m);
                prop_assert!(resid.norm() < 1e-12 * (1.0 + e * e));
            }
        }
    }
}
