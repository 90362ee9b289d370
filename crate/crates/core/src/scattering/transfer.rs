//! 2x2 complex transfer matrices acting on the channel spinor `(phi, chi)`.
//!
//! Convention: `psi(x + L) = M psi(x)`. Across a uniform segment the field
//! propagator is `M = P diag(e^{ipL}, e^{-ipL}) P^-1` with the mode basis
//! `P = [[1, 1], [f, -f]]`; in closed form
//! `M = cos(pL) I + i sin(pL)/p K`, `K = [[0, E+m+W], [E-m-W, 0]]`.
//! Only the wavefunction is matched at interfaces (first-order equation),
//! so composing field propagators is all the interface treatment needed.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::ChannelKinematics;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Largest `|Im p| L` accepted by the unscaled [`segment_matrix`].
pub const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m: [[Complex64; 2]; 2],
}

impl TransferMatrix {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    pub fn diagonal(d0: Complex64, d1: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[d0, zero], [zero, d1]])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|z| *z *= s);
        Self::new(m)
    }

    /// Entry-wise maximum deviation from `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self::new([
            [self.m[1][1] / d, -self.m[0][1] / d],
            [-self.m[1][0] / d, self.m[0][0] / d],
        ])
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        let a = &self.m;
        let b = &rhs.m;
        TransferMatrix::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Mode basis `[[1, 1], [f, -f]]`: columns are the right- and left-moving spinors.
pub fn mode_basis(kin: &ChannelKinematics) -> TransferMatrix {
    let one = Complex64::new(1.0, 0.0);
    TransferMatrix::new([[one, one], [kin.f, -kin.f]])
}

/// Mode-basis propagator `diag(e^{ipL}, e^{-ipL})`.
pub fn mode_propagator(kin: &ChannelKinematics, length: f64) -> TransferMatrix {
    TransferMatrix::diagonal((I * kin.p * length).exp(), (-I * kin.p * length).exp())
}

/// Field propagator across a uniform segment.
///
/// Fails with [`Error::Overflow`] when `|Im p| L > 700`; use
/// [`ScaledTransferMatrix::segment`] for opaque segments.
pub fn segment_matrix(kin: &ChannelKinematics, length: f64) -> Result<TransferMatrix> {
    if !(length > 0.0) {
        return Err(Error::invalid("length", "segment length must be positive"));
    }
    let exponent = kin.p.im.abs() * length;
    if exponent > MAX_EXPONENT {
        return Err(Error::Overflow { exponent });
    }
    let scaled = ScaledTransferMatrix::segment(kin, length);
    Ok(scaled.mantissa.scale(scaled.log_scale.exp()))
}

/// `cos(pL)` and `sin(pL)/p`, each multiplied by `e^{-|Im p| L}`.
fn scaled_trig(kin: &ChannelKinematics, length: f64) -> (Complex64, Complex64, f64) {
    if kin.is_evanescent() {
        let kappa = kin.p.im;
        let x = kappa * length;
        let decay = (-2.0 * x).exp();
        // cosh(x) e^{-x}, sinh(x) e^{-x} / kappa
        let c = 0.5 * (1.0 + decay);
        let s = if x < 1e-4 {
            // sinh(x)/kappa e^{-x} ~ L (1 - x + 2x^2/3)
            length * (1.0 - x + 2.0 * x * x / 3.0)
        } else {
            -0.5 * (-2.0 * x).exp_m1() / kappa
        };
        (Complex64::new(c, 0.0), Complex64::new(s, 0.0), x)
    } else {
        let k = kin.p.re;
        let x = k * length;
        (
            Complex64::new(x.cos(), 0.0),
            Complex64::new(x.sin() / k, 0.0),
            0.0,
        )
    }
}

/// Transfer matrix stored as `e^{log_scale} * mantissa`, keeping the
/// mantissa's largest entry near unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTransferMatrix {
    pub mantissa: TransferMatrix,
    pub log_scale: f64,
}

impl ScaledTransferMatrix {
    pub fn identity() -> Self {
        Self {
            mantissa: TransferMatrix::identity(),
            log_scale: 0.0,
        }
    }

    /// Overflow-free segment propagator, `e^{|Im p| L}` factored out.
    pub fn segment(kin: &ChannelKinematics, length: f64) -> Self {
        let (c, s, log_scale) = scaled_trig(kin, length);
        let mantissa = TransferMatrix::new([
            [c, I * kin.upper_coupling() * s],
            [I * kin.lower_coupling() * s, c],
        ]);
        Self {
            mantissa,
            log_scale,
        }
        .renormalized()
    }

    fn renormalized(self) -> Self {
        let n = self.mantissa.max_norm();
        if n > 0.0 && n.is_finite() {
            Self {
                mantissa: self.mantissa.scale(1.0 / n),
                log_scale: self.log_scale + n.ln(),
            }
        } else {
            self
        }
    }

    /// Apply `self` first, then `next`: returns `next * self`.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            mantissa: next.mantissa * self.mantissa,
            log_scale: self.log_scale + next.log_scale,
        }
        .renormalized()
    }

    /// Unscaled matrix; may overflow for opaque barriers.
    pub fn to_matrix(&self) -> TransferMatrix {
        self.mantissa.scale(self.log_scale.exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{kinematics, ChannelKinematics};

    #[test]
    fn free_mode_phases_at_pi() {
        let kin = kinematics(2f64.sqrt(), 1.0, 0.0).unwrap();
        let d = mode_propagator(&kin, std::f64::consts::PI);
        assert!((d.m[0][0] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((d.m[1][1] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evanescent_factors() {
        let kin = kinematics(1.2, 1.0, 1.0).unwrap();
        let d = mode_propagator(&kin, 1.0);
        assert!((d.m[0][0].re - (-1.6f64).exp()).abs() < 1e-15);
        assert!((d.m[1][1].re - 1.6f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn closed_form_equals_mode_basis_product() {
        for &(e, w, l) in &[
            (1.2, 1.0, 1.0),
            (1.2, 0.0, 0.7),
            (2.5, 0.3, 2.0),
            (1.1, 1.5, 0.05),
        ] {
            let kin = ChannelKinematics::segment(e, 1.0, w).unwrap();
            let p = mode_basis(&kin);
            let via_modes = p * mode_propagator(&kin, l) * p.inverse();
            let closed = segment_matrix(&kin, l).unwrap();
            assert!(via_modes.max_diff(&closed) < 1e-13 * closed.max_norm());
        }
    }

    #[test]
    fn segment_is_unimodular() {
        let kin = kinematics(1.2, 1.0, 1.0).unwrap();
        let m = segment_matrix(&kin, 3.0).unwrap();
        assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        let free = kinematics(1.7, 1.0, 0.0).unwrap();
        let m = segment_matrix(&free, 3.0).unwrap();
        assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn semigroup_property() {
        for &(e, w) in &[(1.2, 1.0), (1.8, 0.2)] {
            let kin = ChannelKinematics::segment(e, 1.0, w).unwrap();
            let whole = segment_matrix(&kin, 1.7).unwrap();
            let split = segment_matrix(&kin, 1.1).unwrap() * segment_matrix(&kin, 0.6).unwrap();
            assert!(whole.max_diff(&split) < 1e-13 * whole.max_norm());
        }
    }

    #[test]
    fn overflow_guard() {
        let kin = kinematics(1.2, 1.0, 1.0).unwrap();
        assert!(matches!(
            segment_matrix(&kin, 500.0),
            Err(Error::Overflow { .. })
        ));
        let s = ScaledTransferMatrix::segment(&kin, 500.0);
        assert!(s.mantissa.max_norm().is_finite());
        assert!((s.log_scale - (800.0 + (kin.upper_coupling() / 3.2).ln())).abs() < 1.0);
    }

    #[test]
    fn scaled_composition_matches_plain_product() {
        let a = ChannelKinematics::segment(1.2, 1.0, 1.0).unwrap();
        let b = ChannelKinematics::segment(1.2, 1.0, 0.1).unwrap();
        let plain = segment_matrix(&b, 0.4).unwrap() * segment_matrix(&a, 2.0).unwrap();
        let scaled = ScaledTransferMatrix::segment(&a, 2.0)
            .then(&ScaledTransferMatrix::segment(&b, 0.4))
            .to_matrix();
        assert!(plain.max_diff(&scaled) < 1e-13 * plain.max_norm());
    }
}
