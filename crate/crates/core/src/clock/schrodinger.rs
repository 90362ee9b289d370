//! Nonrelativistic reference: 1D Schrodinger scattering with Larmor-clock
//! times, used to check the Dirac clock in its low-energy limit.
//!
//! `psi'' = -2m (eps - U - shift) psi`; incident `e^{ik0x}`, reflected
//! `r e^{-ik0x}`, transmitted `t e^{ik0x}`, `k0 = sqrt(2 m eps)`. Both `psi`
//! and `psi'` are matched at interfaces.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::profile::PiecewiseBarrier;
use crate::scattering::TransferMatrix;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerResult {
    pub t: Complex64,
    pub r: Complex64,
    pub k0: f64,
}

impl SchrodingerResult {
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerTimes {
    pub tau_t: f64,
    pub tau_r: Option<f64>,
    pub tau_d: f64,
    pub transmission: f64,
    pub reflection: f64,
}

impl SchrodingerTimes {
    /// `|T|^2 tau_T + |R|^2 tau_R`.
    pub fn larmor(&self) -> f64 {
        self.transmission * self.tau_t + self.reflection * self.tau_r.unwrap_or(0.0)
    }
}

fn wavenumber(kinetic: f64, mass: f64, u: f64) -> Result<Complex64> {
    let q2 = 2.0 * mass * (kinetic - u);
    if q2.abs() < 1e-14 {
        return Err(Error::ThresholdEnergy { gap: q2 });
    }
    Ok(if q2 > 0.0 {
        Complex64::new(q2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-q2).sqrt())
    })
}

/// Propagator of `(psi, psi')` across a uniform segment.
fn segment(q: Complex64, l: f64) -> TransferMatrix {
    let c = (q * l).cos();
    let s = (q * l).sin();
    TransferMatrix::new([[c, s / q], [-q * s, c]])
}

pub fn scatter(
    barrier: &PiecewiseBarrier,
    kinetic: f64,
    mass: f64,
    shift: f64,
) -> Result<SchrodingerResult> {
    if !(kinetic > 0.0) {
        return Err(Error::invalid("kinetic", "kinetic energy must be positive"));
    }
    let k0 = (2.0 * mass * kinetic).sqrt();
    let mut m = TransferMatrix::identity();
    for s in barrier.segments() {
        let q = wavenumber(kinetic, mass, s.height + shift)?;
        m = segment(q, s.length) * m;
    }
    let one = Complex64::new(1.0, 0.0);
    let p0 = TransferMatrix::new([[one, one], [I * k0, -I * k0]]);
    let s = p0.inverse() * m * p0;
    let (a, b) = (barrier.start(), barrier.end());
    let t = (-I * k0 * (b - a)).exp() / s.m[1][1];
    let r = -(s.m[1][0] / s.m[1][1]) * (2.0 * I * k0 * a).exp();
    Ok(SchrodingerResult { t, r, k0 })
}

/// `int_0^L e^{cx} dx`.
fn integral_exp(c: Complex64, l: f64) -> Complex64 {
    if (c * l).norm() < 1e-8 {
        return Complex64::new(l, 0.0) * (1.0 + 0.5 * c * l);
    }
    ((c * l).exp() - 1.0) / c
}

/// `int_a^b |psi|^2 dx` for the unshifted solution, segment by segment.
fn integrated_density(barrier: &PiecewiseBarrier, kinetic: f64, mass: f64) -> Result<f64> {
    let res = scatter(barrier, kinetic, mass, 0.0)?;
    let b = barrier.end();
    let tb = res.t * (I * res.k0 * b).exp();
    let mut psi = [tb, I * res.k0 * tb];
    let mut total = 0.0;
    for s in barrier.segments().iter().rev() {
        let q = wavenumber(kinetic, mass, s.height)?;
        let fwd_r = 0.5 * (psi[0] + psi[1] / (I * q));
        let bwd_r = 0.5 * (psi[0] - psi[1] / (I * q));
        let fa = fwd_r * (-I * q * s.length).exp();
        let ba = bwd_r * (I * q * s.length).exp();
        let l = s.length;
        total += fa.norm_sqr() * integral_exp(Complex64::new(-2.0 * q.im, 0.0), l).re
            + ba.norm_sqr() * integral_exp(Complex64::new(2.0 * q.im, 0.0), l).re
            + 2.0 * (fa * ba.conj() * integral_exp(Complex64::new(0.0, 2.0 * q.re), l)).re;
        psi = [fa + ba, I * q * (fa - ba)];
    }
    Ok(total)
}

/// Buttiker Larmor times `tau_T`, `tau_R` (potential-shift derivatives of
/// the phases) and the dwell time `(m / k0) int |psi|^2`.
pub fn schrodinger_reference(
    barrier: &PiecewiseBarrier,
    kinetic: f64,
    mass: f64,
    h: f64,
) -> Result<SchrodingerTimes> {
    let base = scatter(barrier, kinetic, mass, 0.0)?;
    let plus = scatter(barrier, kinetic, mass, h)?;
    let minus = scatter(barrier, kinetic, mass, -h)?;
    let tau_t = -(plus.t * minus.t.conj()).arg() / (2.0 * h);
    let tau_r = -(plus.r * minus.r.conj()).arg() / (2.0 * h);
    let tau_d = mass / base.k0 * integrated_density(barrier, kinetic, mass)?;
    Ok(SchrodingerTimes {
        tau_t,
        tau_r: (base.reflection() >= super::RESONANCE_R2).then_some(tau_r),
        tau_d,
        transmission: base.transmission(),
        reflection: base.reflection(),
    })
}
