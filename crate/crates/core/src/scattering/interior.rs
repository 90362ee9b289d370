use num_complex::Complex64;

use super::{scatter_channel, segment_kinematics, ScatteringResult};
use crate::error::Result;
use crate::kinematics::ChannelKinematics;
use crate::profile::PiecewiseBarrier;
use crate::units::ParticleState;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Mode amplitudes inside one segment, referenced to the segment's left edge:
/// `phi = A e^{ip(x-x0)} + B e^{-ip(x-x0)}`, `chi = f (A e^{..} - B e^{..})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentAmplitudes {
    pub start: f64,
    pub length: f64,
    pub kin: ChannelKinematics,
    pub a: Complex64,
    pub b: Complex64,
}

impl SegmentAmplitudes {
    pub fn field_at(&self, x: f64) -> [Complex64; 2] {
        let xi = x - self.start;
        let fwd = self.a * (I * self.kin.p * xi).exp();
        let bwd = self.b * (-I * self.kin.p * xi).exp();
        [fwd + bwd, self.kin.f * (fwd - bwd)]
    }

    /// `int |phi|^2 + |chi|^2 dx` over the segment, in closed form.
    pub fn integrated_density(&self) -> f64 {
        let p = self.kin.p;
        let f2 = self.kin.f.norm_sqr();
        let l = self.length;
        // |e^{ipx}|^2 = e^{-2 Im p x}, e^{ipx} conj(e^{-ipx}) = e^{2i Re p x}
        let fwd = integral_exp(Complex64::new(-2.0 * p.im, 0.0), l).re;
        let bwd = integral_exp(Complex64::new(2.0 * p.im, 0.0), l).re;
        let cross = integral_exp(Complex64::new(0.0, 2.0 * p.re), l);
        (1.0 + f2) * (self.a.norm_sqr() * fwd + self.b.norm_sqr() * bwd)
            + (1.0 - f2) * 2.0 * (self.a * self.b.conj() * cross).re
    }
}

/// `int_0^L e^{cx} dx`, accurate for small `|c L|`.
fn integral_exp(c: Complex64, l: f64) -> Complex64 {
    let z = c * l;
    if z.norm() < 1e-3 {
        // L (1 + z/2 + z^2/6 + z^3/24)
        return l * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
    }
    // e^z - 1 without cancellation
    let (x, y) = (z.re, z.im);
    let s = (0.5 * y).sin();
    let em1 = Complex64::new(x.exp_m1() * y.cos() - 2.0 * s * s, x.exp() * y.sin());
    em1 / c
}

/// Stationary solution of one channel, inside and outside the barrier.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorField {
    pub particle: ParticleState,
    pub result: ScatteringResult,
    pub segments: Vec<SegmentAmplitudes>,
}

impl InteriorField {
    pub fn start(&self) -> f64 {
        self.segments[0].start
    }

    pub fn end(&self) -> f64 {
        let last = self.segments[self.segments.len() - 1];
        last.start + last.length
    }

    /// Spinor `(phi, chi)` at `x`, using the asymptotic forms outside `[a, b]`.
    pub fn field_at(&self, x: f64) -> [Complex64; 2] {
        let (k0, f0) = (self.particle.k0, self.particle.f0);
        if x < self.start() {
            let inc = Complex64::new(self.particle.incident_norm(), 0.0) * (I * k0 * x).exp();
            let refl = self.result.r * (-I * k0 * x).exp();
            return [inc + refl, f0 * (inc - refl)];
        }
        if x > self.end() {
            let t = self.result.t * (I * k0 * x).exp();
            return [t, f0 * t];
        }
        let i = self
            .segments
            .partition_point(|s| s.start + s.length < x)
            .min(self.segments.len() - 1);
        self.segments[i].field_at(x)
    }

    /// `rho(x) = |phi|^2 + |chi|^2`.
    pub fn density(&self, x: f64) -> f64 {
        let [phi, chi] = self.field_at(x);
        phi.norm_sqr() + chi.norm_sqr()
    }

    /// `n` evenly spaced `(x, rho)` samples over `[a, b]`.
    pub fn sample(&self, n: usize) -> Vec<(f64, f64)> {
        let (a, b) = (self.start(), self.end());
        (0..n)
            .map(|i| {
                let x = if n == 1 {
                    0.5 * (a + b)
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                };
                (x, self.density(x))
            })
            .collect()
    }

    /// `int_a^b rho dx`.
    pub fn integrated_density(&self) -> f64 {
        self.segments.iter().map(|s| s.integrated_density()).sum()
    }

    /// Largest jump of either component across any interface, relative to
    /// the local field magnitude; includes the matching at `a` and `b`.
    pub fn continuity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut check = |left: [Complex64; 2], right: [Complex64; 2]| {
            let scale = 1.0_f64.max(left[0].norm()).max(left[1].norm());
            for c in 0..2 {
                worst = worst.max((left[c] - right[c]).norm() / scale);
            }
        };
        let (k0, f0) = (self.particle.k0, self.particle.f0);
        let a = self.start();
        let inc = Complex64::new(self.particle.incident_norm(), 0.0) * (I * k0 * a).exp();
        let refl = self.result.r * (-I * k0 * a).exp();
        check(
            [inc + refl, f0 * (inc - refl)],
            self.segments[0].field_at(a),
        );
        for w in self.segments.windows(2) {
            let x = w[1].start;
            check(w[0].field_at(x), w[1].field_at(x));
        }
        let b = self.end();
        let t = self.result.t * (I * k0 * b).exp();
        check(
            self.segments[self.segments.len() - 1].field_at(b),
            [t, f0 * t],
        );
        worst
    }
}

/// Interior amplitudes of the channel with potential offset `shift`.
///
/// Built by propagating the transmitted wave from `b` back to `a`; the
/// physical solution grows in that direction, so the recursion is stable.
pub fn interior_field(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    shift: f64,
) -> Result<InteriorField> {
    let result = scatter_channel(barrier, particle, shift)?;
    let kins = segment_kinematics(barrier, particle, shift)?;
    let mut x = barrier.end();
    let t = result.t * (I * particle.k0 * x).exp();
    let mut psi = [t, particle.f0 * t];
    let mut segments = Vec::with_capacity(kins.len());
    for (kin, seg) in kins.iter().zip(barrier.segments()).rev() {
        let start = x - seg.length;
        let fwd_r = 0.5 * (psi[0] + psi[1] / kin.f);
        let bwd_r = 0.5 * (psi[0] - psi[1] / kin.f);
        let a = fwd_r * (-I * kin.p * seg.length).exp();
        let b = bwd_r * (I * kin.p * seg.length).exp();
        psi = [a + b, kin.f * (a - b)];
        segments.push(SegmentAmplitudes {
            start,
            length: seg.length,
            kin: *kin,
            a,
            b,
        });
        x = start;
    }
    segments.reverse();
    Ok(InteriorField {
        particle: *particle,
        result,
        segments,
    })
}
