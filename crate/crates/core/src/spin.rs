//! Spin expectation values of the outgoing waves and the Larmor read-out.
//!
//! `S_i = (hbar/2) Sigma_i` with `Sigma_i = diag(sigma_i, sigma_i)`. Values
//! are stored in units of `hbar`, so a fully polarized nonrelativistic spin
//! has `|s| = 1/2`. Exact bilinears are the primary route; the first-order
//! expansions in [`first_order`] exist to be checked against them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::profile::PiecewiseBarrier;
use crate::scattering::{scatter_channel, scatter_spin, SpinPair};
use crate::spinor::{FourSpinor, SpinOrientation};
use crate::units::ParticleState;

pub type Matrix4 = [[Complex64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl SpinVector {
    pub fn new(s1: f64, s2: f64, s3: f64) -> Self {
        Self { s1, s2, s3 }
    }

    pub fn norm(&self) -> f64 {
        (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3).sqrt()
    }

    pub fn add(&self, other: &SpinVector) -> SpinVector {
        SpinVector::new(self.s1 + other.s1, self.s2 + other.s2, self.s3 + other.s3)
    }

    pub fn distance(&self, other: &SpinVector) -> f64 {
        SpinVector::new(self.s1 - other.s1, self.s2 - other.s2, self.s3 - other.s3).norm()
    }
}

/// `Sigma_i` for `i` in `1..=3`.
pub fn sigma(i: usize) -> Matrix4 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let im = Complex64::new(0.0, 1.0);
    let pauli = match i {
        1 => [[z, one], [one, z]],
        2 => [[z, -im], [im, z]],
        3 => [[one, z], [z, -one]],
        _ => panic!("spin index must be 1, 2 or 3"),
    };
    let mut m = [[z; 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            m[r][c] = pauli[r][c];
            m[r + 2][c + 2] = pauli[r][c];
        }
    }
    m
}

/// `beta = diag(1, 1, -1, -1)`.
pub fn beta() -> Matrix4 {
    let z = Complex64::new(0.0, 0.0);
    let mut m = [[z; 4]; 4];
    for (i, s) in [1.0, 1.0, -1.0, -1.0].into_iter().enumerate() {
        m[i][i] = Complex64::new(s, 0.0);
    }
    m
}

pub fn matmul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn expectation(m: &Matrix4, psi: &FourSpinor) -> Complex64 {
    let v = &psi.0;
    (0..4)
        .map(|i| v[i].conj() * (0..4).map(|j| m[i][j] * v[j]).sum::<Complex64>())
        .sum()
}

/// `(1/2) psi^dagger Sigma_i psi` for each axis, no small-field approximation.
pub fn spin_expect_exact(psi: &FourSpinor) -> SpinVector {
    SpinVector::new(
        0.5 * expectation(&sigma(1), psi).re,
        0.5 * expectation(&sigma(2), psi).re,
        0.5 * expectation(&sigma(3), psi).re,
    )
}

/// `psi_t = (T_{U-V} u1, T_{U+V} u2, f0 T_{U+V} u2, f0 T_{U-V} u1)`.
pub fn transmitted_wave(pair: &SpinPair, orientation: &SpinOrientation, f0: f64) -> FourSpinor {
    FourSpinor::from_channels(orientation, pair.up.t, pair.down.t, f0)
}

/// `psi_r = (R_{U-V} u1, R_{U+V} u2, -f0 R_{U+V} u2, -f0 R_{U-V} u1)`.
pub fn reflected_wave(pair: &SpinPair, orientation: &SpinOrientation, f0: f64) -> FourSpinor {
    FourSpinor::from_channels(orientation, pair.up.r, pair.down.r, -f0)
}

pub fn transmitted_spin(pair: &SpinPair, orientation: &SpinOrientation, f0: f64) -> SpinVector {
    spin_expect_exact(&transmitted_wave(pair, orientation, f0))
}

pub fn reflected_spin(pair: &SpinPair, orientation: &SpinOrientation, f0: f64) -> SpinVector {
    spin_expect_exact(&reflected_wave(pair, orientation, f0))
}

/// Transmitted plus reflected expectation values.
pub fn summed_spin(pair: &SpinPair, orientation: &SpinOrientation, f0: f64) -> SpinVector {
    transmitted_spin(pair, orientation, f0).add(&reflected_spin(pair, orientation, f0))
}

/// Free precession under `H_s = -(hbar omega_L / 2) beta Sigma_3`, closed form.
pub fn free_precession(orientation: &SpinOrientation, f0: f64, omega_l: f64, t: f64) -> SpinVector {
    let g = (1.0 - f0 * f0) / (1.0 + f0 * f0);
    let (st, ct) = orientation.theta.sin_cos();
    let angle = -omega_l * t + orientation.phi;
    SpinVector::new(
        0.5 * st * angle.cos(),
        0.5 * g * st * angle.sin(),
        0.5 * g * ct,
    )
}

/// `exp(-i H_s t) psi` with `H_s = -(omega_L / 2) beta Sigma_3`.
pub fn evolve_free(psi: &FourSpinor, omega_l: f64, t: f64) -> FourSpinor {
    let b = beta();
    let s3 = sigma(3);
    let bs = matmul4(&b, &s3);
    let mut out = psi.0;
    for (i, z) in out.iter_mut().enumerate() {
        // beta Sigma_3 is diagonal
        *z *= Complex64::from_polar(1.0, 0.5 * omega_l * t * bs[i][i].re);
    }
    FourSpinor(out)
}

/// Degeneracy thresholds for the clock read-out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutThresholds {
    pub min_sin_theta: f64,
    pub min_ellipse: f64,
}

impl Default for ReadoutThresholds {
    fn default() -> Self {
        Self {
            min_sin_theta: 1e-6,
            min_ellipse: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionReading {
    /// Precession angle `phi - azimuth`, in `(-pi, pi]`.
    pub angle: f64,
    pub time: f64,
    /// `(1 - f0^2) / (1 + f0^2)`, the factor undone on `s2`.
    pub conditioning: f64,
}

/// Read the elapsed time off a spin vector: undo the `(1-f0^2)/(1+f0^2)`
/// squeeze of `s2`, take the azimuth, and divide the rotation by `omega_L`.
pub fn extract_precession_time(
    sv: &SpinVector,
    orientation: &SpinOrientation,
    f0: f64,
    omega_l: f64,
    thresholds: &ReadoutThresholds,
) -> Result<PrecessionReading> {
    let sin_theta = orientation.theta.sin();
    if sin_theta < thresholds.min_sin_theta {
        return Err(Error::PoleOrientation { sin_theta });
    }
    let gap = 1.0 - f0 * f0;
    if gap < thresholds.min_ellipse {
        return Err(Error::UltraRelativisticDegeneracy { gap });
    }
    if !(omega_l.is_finite() && omega_l != 0.0) {
        return Err(Error::invalid("V", "read-out needs a nonzero field"));
    }
    let conditioning = gap / (1.0 + f0 * f0);
    let azimuth = Complex64::new(sv.s1, sv.s2 / conditioning);
    let angle = -(azimuth * Complex64::from_polar(1.0, -orientation.phi)).arg();
    Ok(PrecessionReading {
        angle,
        time: angle / omega_l,
        conditioning,
    })
}

/// Spin read-out of the Larmor clock at field strength `v`.
pub fn larmor_readout(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    orientation: &SpinOrientation,
    v: f64,
) -> Result<PrecessionReading> {
    let pair = scatter_spin(barrier, particle, v)?;
    let sv = summed_spin(&pair, orientation, particle.f0);
    extract_precession_time(
        &sv,
        orientation,
        particle.f0,
        crate::units::larmor_frequency(v),
        &ReadoutThresholds::default(),
    )
}

/// First-order-in-`V` expressions for the outgoing spin, written in terms of
/// the channel quantities at `V = 0` and their `V`-derivatives.
pub mod first_order {
    use super::*;

    /// `|T_U|^2`, `|R_U|^2`, and `d/dV` of the phases and moduli at `V = 0`.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct ChannelDerivatives {
        pub t2: f64,
        pub r2: f64,
        pub dalpha: f64,
        pub dbeta: f64,
        pub dt2: f64,
        pub dr2: f64,
    }

    impl ChannelDerivatives {
        /// Central differences at step `h` around `V = 0`.
        pub fn compute(
            barrier: &PiecewiseBarrier,
            particle: &ParticleState,
            h: f64,
        ) -> Result<Self> {
            let base = scatter_channel(barrier, particle, 0.0)?;
            let pair = scatter_spin(barrier, particle, h)?;
            let (plus, minus) = (pair.down, pair.up);
            Ok(Self {
                t2: base.t.norm_sqr(),
                r2: base.r.norm_sqr(),
                dalpha: (plus.t * minus.t.conj()).arg() / (2.0 * h),
                dbeta: (plus.r * minus.r.conj()).arg() / (2.0 * h),
                dt2: (plus.t.norm_sqr() - minus.t.norm_sqr()) / (2.0 * h),
                dr2: (plus.r.norm_sqr() - minus.r.norm_sqr()) / (2.0 * h),
            })
        }
    }

    fn outgoing(
        mod2: f64,
        dphase: f64,
        dmod2: f64,
        o: &SpinOrientation,
        f0: f64,
        v: f64,
    ) -> SpinVector {
        let (st, ct) = o.theta.sin_cos();
        let arg = 2.0 * v * dphase + o.phi;
        let (p, m) = (1.0 + f0 * f0, 1.0 - f0 * f0);
        SpinVector::new(
            0.5 * p * mod2 * st * arg.cos(),
            0.5 * m * mod2 * st * arg.sin(),
            0.5 * m * (mod2 * ct - v * dmod2),
        )
    }

    pub fn transmitted(d: &ChannelDerivatives, o: &SpinOrientation, f0: f64, v: f64) -> SpinVector {
        outgoing(d.t2, d.dalpha, d.dt2, o, f0, v)
    }

    pub fn reflected(d: &ChannelDerivatives, o: &SpinOrientation, f0: f64, v: f64) -> SpinVector {
        outgoing(d.r2, d.dbeta, d.dr2, o, f0, v)
    }

    /// Single-cosine form of the summed spin.
    pub fn summed_resummed(
        d: &ChannelDerivatives,
        o: &SpinOrientation,
        f0: f64,
        v: f64,
    ) -> SpinVector {
        let (st, ct) = o.theta.sin_cos();
        let p = 1.0 + f0 * f0;
        let g = (1.0 - f0 * f0) / p;
        let arg = p * d.t2 * 2.0 * v * d.dalpha + p * d.r2 * 2.0 * v * d.dbeta + o.phi;
        SpinVector::new(0.5 * st * arg.cos(), 0.5 * g * st * arg.sin(), 0.5 * g * ct)
    }
}
