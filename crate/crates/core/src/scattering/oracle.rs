//! Independent check of the transfer-matrix solver: direct integration of
//! the channel equations
//!
//! ```text
//! phi' = i (E + m + U(x)) chi,    chi' = i (E - m - U(x)) phi
//! ```
//!
//! from `b` to `a` with an adaptive Dormand-Prince 5(4) integrator, starting
//! from a pure transmitted wave of unit amplitude and normalizing afterwards.

use num_complex::Complex64;

use super::{Channel, ScatteringResult};
use crate::error::{Error, Result};
use crate::profile::{BarrierProfile, PiecewiseBarrier, ProfileKind};
use crate::units::ParticleState;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `U` varying linearly from `u_lo` at `lo` to `u_hi` at `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPiece {
    pub lo: f64,
    pub hi: f64,
    pub u_lo: f64,
    pub u_hi: f64,
}

impl LinearPiece {
    fn at(&self, x: f64) -> f64 {
        self.u_lo + (self.u_hi - self.u_lo) * (x - self.lo) / (self.hi - self.lo)
    }
}

/// Potentials that are piecewise linear between breakpoints.
pub trait PiecewiseLinear {
    fn pieces(&self) -> Vec<LinearPiece>;
}

impl PiecewiseLinear for PiecewiseBarrier {
    fn pieces(&self) -> Vec<LinearPiece> {
        let mut x = self.start();
        self.segments()
            .iter()
            .map(|s| {
                let p = LinearPiece {
                    lo: x,
                    hi: x + s.length,
                    u_lo: s.height,
                    u_hi: s.height,
                };
                x += s.length;
                p
            })
            .collect()
    }
}

impl PiecewiseLinear for BarrierProfile {
    fn pieces(&self) -> Vec<LinearPiece> {
        match &self.kind {
            ProfileKind::Sampled { points } => points
                .windows(2)
                .map(|w| LinearPiece {
                    lo: w[0].0,
                    hi: w[1].0,
                    u_lo: w[0].1,
                    u_hi: w[1].1,
                })
                .collect(),
            _ => self
                .exact_segments()
                .map(|p| p.pieces())
                .unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeTolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeTolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 2_000_000,
        }
    }
}

type State = [Complex64; 2];

fn rhs(energy: f64, mass: f64, u: f64, y: &State) -> State {
    [
        I * (energy + mass + u) * y[1],
        I * (energy - mass - u) * y[0],
    ]
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// b5 - b4
const ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate across one linear piece from `hi` down to `lo`.
fn integrate_piece(
    piece: &LinearPiece,
    energy: f64,
    mass: f64,
    y0: State,
    tol: &OdeTolerances,
    steps: &mut usize,
) -> Result<State> {
    let span = piece.hi - piece.lo;
    let umax = piece.u_lo.abs().max(piece.u_hi.abs());
    let scale = (energy.abs() + mass + umax).max(1e-3);
    let mut h = -(span.min(0.05 / scale));
    let mut x = piece.hi;
    let mut y = y0;
    let f = |x: f64, y: &State| rhs(energy, mass, piece.at(x), y);
    let mut k1 = f(x, &y);
    while x > piece.lo {
        if x + h < piece.lo {
            h = piece.lo - x;
        }
        *steps += 1;
        if *steps > tol.max_steps {
            return Err(Error::IntegratorFailure {
                x,
                reason: "step budget exhausted".into(),
            });
        }
        let k2 = f(x + C[1] * h, &axpy(&y, h, &[(A2[0], &k1)]));
        let k3 = f(x + C[2] * h, &axpy(&y, h, &[(A3[0], &k1), (A3[1], &k2)]));
        let k4 = f(
            x + C[3] * h,
            &axpy(&y, h, &[(A4[0], &k1), (A4[1], &k2), (A4[2], &k3)]),
        );
        let k5 = f(
            x + C[4] * h,
            &axpy(
                &y,
                h,
                &[(A5[0], &k1), (A5[1], &k2), (A5[2], &k3), (A5[3], &k4)],
            ),
        );
        let k6 = f(
            x + C[5] * h,
            &axpy(
                &y,
                h,
                &[
                    (A6[0], &k1),
                    (A6[1], &k2),
                    (A6[2], &k3),
                    (A6[3], &k4),
                    (A6[4], &k5),
                ],
            ),
        );
        let y_new = axpy(
            &y,
            h,
            &[
                (B5[0], &k1),
                (B5[2], &k3),
                (B5[3], &k4),
                (B5[4], &k5),
                (B5[5], &k6),
            ],
        );
        let k7 = f(x + h, &y_new);
        let err_vec = axpy(
            &[Complex64::new(0.0, 0.0); 2],
            h,
            &[
                (ERR[0], &k1),
                (ERR[2], &k3),
                (ERR[3], &k4),
                (ERR[4], &k5),
                (ERR[5], &k6),
                (ERR[6], &k7),
            ],
        );
        let err = (0..2)
            .map(|i| {
                let sc = tol.atol + tol.rtol * y[i].norm().max(y_new[i].norm());
                err_vec[i].norm() / sc
            })
            .fold(0.0, f64::max);
        if err <= 1.0 {
            x += h;
            y = y_new;
            k1 = k7;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h.abs() < 1e-14 * (1.0 + x.abs()) && x > piece.lo {
            return Err(Error::IntegratorFailure {
                x,
                reason: format!("step size underflow (h = {h:e})"),
            });
        }
    }
    Ok(y)
}

/// ODE-integration solve with default tolerances (`rtol 1e-10`, `atol 1e-12`).
pub fn ode_oracle<P: PiecewiseLinear + ?Sized>(
    potential: &P,
    particle: &ParticleState,
    shift: f64,
) -> Result<ScatteringResult> {
    ode_oracle_with(potential, particle, shift, &OdeTolerances::default())
}

pub fn ode_oracle_with<P: PiecewiseLinear + ?Sized>(
    potential: &P,
    particle: &ParticleState,
    shift: f64,
    tol: &OdeTolerances,
) -> Result<ScatteringResult> {
    let pieces = potential.pieces();
    let (k0, f0) = (particle.k0, particle.f0);
    let local_energy = particle.energy - shift;
    let (a, b) = match (pieces.first(), pieces.last()) {
        (Some(first), Some(last)) => (first.lo, last.hi),
        _ => return Err(Error::MalformedProfile("empty potential".into())),
    };
    let e_b = (I * k0 * b).exp();
    let mut y: State = [e_b, f0 * e_b];
    let mut steps = 0;
    for piece in pieces.iter().rev() {
        y = integrate_piece(piece, local_energy, particle.mass, y, tol, &mut steps)?;
    }
    let fwd = 0.5 * (y[0] + y[1] / f0) * (-I * k0 * a).exp();
    let bwd = 0.5 * (y[0] - y[1] / f0) * (I * k0 * a).exp();
    let scale = Complex64::new(particle.incident_norm(), 0.0) / fwd;
    let t = scale;
    let r = scale * bwd;
    Ok(ScatteringResult {
        t,
        r,
        alpha: t.arg(),
        beta: r.arg(),
        channel: Channel::Unshifted,
        shift,
        f0,
    })
}
