//! Invariant suite behind `larmor validate` and the acceptance tests.
//!
//! Each [`Suite`] runs a family of cases and reports one [`CheckResult`]
//! per invariant with the worst value seen. Randomized families are drawn
//! from a seeded ChaCha stream, so reports are reproducible.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clock::{
    analytic_rect_tau_t, central_difference, channel_times, clock_times, hartman_sweep,
    larmor_time, schrodinger_reference, tau_infinity, FdOptions,
};
use crate::profile::{discretize, BarrierProfile, PiecewiseBarrier};
use crate::scattering::{ode_oracle, scatter_channel, scatter_spin};
use crate::spin::{first_order, larmor_readout, reflected_spin, summed_spin, transmitted_spin};
use crate::spinor::SpinOrientation;
use crate::units::ParticleState;
use crate::Result;

pub const DEFAULT_SEED: u64 = 0x5eed_1a4d_0c10_c4a1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationSettings {
    pub seed: u64,
    /// Replaces every numerical tolerance in the suite (negative controls).
    pub tolerance_override: Option<f64>,
    /// Size of the randomized barrier family.
    pub family_size: usize,
}

impl Default for ValidationSettings {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerance_override: None,
            family_size: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    CentralIdentity,
    Unitarity,
    SymmetricBarrier,
    ClosedForm,
    Hartman,
    SpinFirstOrder,
    ClockReadout,
    OracleEquivalence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::CentralIdentity,
        Suite::Unitarity,
        Suite::SymmetricBarrier,
        Suite::ClosedForm,
        Suite::Hartman,
        Suite::SpinFirstOrder,
        Suite::ClockReadout,
        Suite::OracleEquivalence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::CentralIdentity => "central identity tau_L = tau_D",
            Suite::Unitarity => "probability conservation",
            Suite::SymmetricBarrier => "symmetric-barrier relations",
            Suite::ClosedForm => "closed-form rectangular tau_T",
            Suite::Hartman => "Hartman saturation",
            Suite::SpinFirstOrder => "spin first-order formulas",
            Suite::ClockReadout => "clock read-out",
            Suite::OracleEquivalence => "oracle equivalence",
        }
    }

    /// Minimum number of cases the suite must cover.
    pub fn min_cases(&self) -> usize {
        match self {
            Suite::CentralIdentity => 50,
            Suite::Unitarity => 50,
            Suite::SymmetricBarrier => 2,
            Suite::ClosedForm => 200,
            Suite::Hartman => 50,
            Suite::SpinFirstOrder => 1,
            Suite::ClockReadout => 10,
            Suite::OracleEquivalence => 50,
        }
    }

    /// Wall-clock budget in seconds.
    pub fn budget_s(&self) -> f64 {
        match self {
            Suite::CentralIdentity => 30.0,
            Suite::Unitarity => 10.0,
            Suite::SymmetricBarrier => 5.0,
            Suite::ClosedForm => 5.0,
            Suite::Hartman => 5.0,
            Suite::SpinFirstOrder => 10.0,
            Suite::ClockReadout => 10.0,
            Suite::OracleEquivalence => 60.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Bound {
    Below { limit: f64 },
    Above { limit: f64 },
    Within { lo: f64, hi: f64 },
}

impl Bound {
    fn holds(&self, x: f64) -> bool {
        match *self {
            Bound::Below { limit } => x < limit,
            Bound::Above { limit } => x > limit,
            Bound::Within { lo, hi } => (lo..=hi).contains(&x),
        }
    }

    /// Distance past the bound, used to pick the worst value.
    fn badness(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::INFINITY;
        }
        match *self {
            Bound::Below { limit } => x - limit,
            Bound::Above { limit } => limit - x,
            Bound::Within { lo, hi } => (lo - x).max(x - hi),
        }
    }

    fn describe(&self) -> String {
        match *self {
            Bound::Below { limit } => format!("< {limit:e}"),
            Bound::Above { limit } => format!("> {limit:e}"),
            Bound::Within { lo, hi } => format!("in [{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Value farthest from (or closest to violating) the bound; `null` if
    /// some case errored.
    pub worst: Option<f64>,
    pub bound: Bound,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

struct Check {
    name: String,
    bound: Bound,
    values: Vec<f64>,
    errors: Vec<String>,
}

impl Check {
    fn new(name: &str, bound: Bound) -> Self {
        Self {
            name: name.to_string(),
            bound,
            values: Vec::new(),
            errors: Vec::new(),
        }
    }

    /// Numerical tolerance, replaced by the override when one is set.
    fn tolerance(name: &str, limit: f64, settings: &ValidationSettings) -> Self {
        Self::new(
            name,
            Bound::Below {
                limit: settings.tolerance_override.unwrap_or(limit),
            },
        )
    }

    fn push(&mut self, x: f64) {
        self.values.push(x);
    }

    fn record(&mut self, x: Result<f64>) {
        match x {
            Ok(v) => self.push(v),
            Err(e) => {
                self.values.push(f64::NAN);
                self.errors.push(e.to_string());
            }
        }
    }

    fn finish(self) -> CheckResult {
        let bound = self.bound;
        let failures = self.values.iter().filter(|&&x| !bound.holds(x)).count();
        let worst = self
            .values
            .iter()
            .copied()
            .max_by(|a, b| bound.badness(*a).total_cmp(&bound.badness(*b)))
            .filter(|x| !x.is_nan());
        CheckResult {
            name: self.name,
            cases: self.values.len(),
            failures,
            worst,
            bound,
            passed: failures == 0 && !self.values.is_empty(),
            errors: self.errors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub name: &'static str,
    pub cases: usize,
    pub min_cases: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed_s: f64,
    pub budget_s: f64,
    pub passed: bool,
}

impl SuiteReport {
    /// One-line summary, `PASS`/`FAIL` first.
    pub fn summary(&self) -> String {
        format!(
            "{} {} ({} cases, min {}, {:.2} s of {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.min_cases,
            self.elapsed_s,
            self.budget_s
        )
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                let worst = c.worst.map_or("error".to_string(), |w| format!("{w:e}"));
                format!(
                    "{}: worst {} (need {}), {}/{} failing",
                    c.name,
                    worst,
                    c.bound.describe(),
                    c.failures,
                    c.cases
                )
            })
            .collect();
        if self.cases < self.min_cases {
            out.push(format!(
                "only {} cases, need {}",
                self.cases, self.min_cases
            ));
        }
        if self.elapsed_s > self.budget_s {
            out.push(format!(
                "took {:.2} s, budget {} s",
                self.elapsed_s, self.budget_s
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub tolerance_override: Option<f64>,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for suite in &self.suites {
            s.push_str(&suite.summary());
            s.push('\n');
            for c in &suite.checks {
                let worst = c.worst.map_or("error".to_string(), |w| format!("{w:.3e}"));
                s.push_str(&format!(
                    "    {:<4} {} [{} cases] worst {} {}\n",
                    if c.passed { "ok" } else { "FAIL" },
                    c.name,
                    c.cases,
                    worst,
                    c.bound.describe()
                ));
            }
            for v in suite.violations() {
                s.push_str(&format!("    violated: {v}\n"));
            }
        }
        s.push_str(if self.passed {
            "all suites passed\n"
        } else {
            "validation FAILED\n"
        });
        s
    }
}

/// One randomized case: an asymmetric piecewise barrier and an energy.
#[derive(Debug, Clone)]
pub struct FamilyCase {
    pub barrier: PiecewiseBarrier,
    pub particle: ParticleState,
}

/// Minimum distance of `E - m` from any segment height; keeps every segment
/// away from the `p = 0` threshold.
const THRESHOLD_MARGIN: f64 = 1e-3;

/// Asymmetric barriers with 2..=10 segments, heights in `[0, 2m]`, lengths in
/// `[0.1, 1]`, and `E` in `(1.05m, 3m)`, with `m = 1`.
pub fn random_family(seed: u64, count: usize) -> Vec<FamilyCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=10);
        let steps: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.1..=1.0), rng.gen_range(0.0..=2.0)))
            .collect();
        let energy = rng.gen_range(1.05..3.0);
        let mirrored: Vec<_> = steps.iter().rev().copied().collect();
        if mirrored == steps
            || steps
                .iter()
                .any(|&(_, h)| (energy - 1.0 - h).abs() < THRESHOLD_MARGIN)
        {
            continue;
        }
        let barrier = PiecewiseBarrier::centered(&steps).expect("valid steps");
        let particle = ParticleState::new(energy, 1.0).expect("E > m");
        out.push(FamilyCase { barrier, particle });
    }
    out
}

/// Observed order of the central difference from steps `h, h/2, h/4`.
pub fn observed_fd_order(
    barrier: &PiecewiseBarrier,
    particle: &ParticleState,
    h: f64,
) -> Result<f64> {
    let t1 = central_difference(barrier, particle, h)?.0;
    let t2 = central_difference(barrier, particle, 0.5 * h)?.0;
    let t3 = central_difference(barrier, particle, 0.25 * h)?.0;
    Ok(((t1 - t2) / (t2 - t3)).abs().log2())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

fn central_identity(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let family = random_family(s.seed, s.family_size);
    let opts = FdOptions::default();
    let mut identity = Check::tolerance("|tau_L - tau_D| / tau_D", 1e-6, s);
    let mut halving = Check::tolerance("fd step-halving change", opts.halving_tol, s);
    let mut order = Check::new(
        "observed fd order (h = 1e-2, 5e-3, 2.5e-3)",
        Bound::Within { lo: 1.8, hi: 2.2 },
    );
    for (i, case) in family.iter().enumerate() {
        match clock_times(&case.barrier, &case.particle, &opts) {
            Ok(t) => {
                identity.push(t.identity_residual());
                halving.push(t.halving_change);
            }
            Err(e) => {
                identity.record(Err(e.clone()));
                halving.record(Err(e));
            }
        }
        if i < 10 {
            order.record(observed_fd_order(&case.barrier, &case.particle, 1e-2));
        }
    }
    (family.len(), vec![identity, halving, order])
}

/// Random Gaussian barriers: `(U0, width, E)`.
fn gaussian_family(seed: u64, count: usize) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9a55);
    (0..count)
        .map(|_| {
            (
                rng.gen_range(0.0..=2.0),
                rng.gen_range(0.2..=1.0),
                rng.gen_range(1.05..3.0),
            )
        })
        .collect()
}

fn unitarity(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let family = random_family(s.seed, s.family_size);
    let mut piecewise = Check::tolerance("piecewise residual (V = 0, +-1e-3)", 1e-12, s);
    for case in &family {
        for shift in [0.0, 1e-3, -1e-3] {
            piecewise.record(
                scatter_channel(&case.barrier, &case.particle, shift)
                    .map(|r| r.unitarity_residual()),
            );
        }
    }
    let gaussians = gaussian_family(s.seed, 20);
    let mut gauss = Check::tolerance("gaussian n = 4096 residual", 1e-8, s);
    for &(u0, width, energy) in &gaussians {
        let res = BarrierProfile::gaussian(u0, width, 2001)
            .and_then(|p| discretize(&p, 4096))
            .and_then(|b| {
                let p = ParticleState::new(energy, 1.0)?;
                scatter_channel(&b, &p, 0.0)
            })
            .map(|r| r.unitarity_residual());
        gauss.record(res);
    }
    (family.len() + gaussians.len(), vec![piecewise, gauss])
}

fn symmetric_cases() -> Vec<(PiecewiseBarrier, f64)> {
    let mut out = Vec::new();
    for &(e, u0, d) in &[
        (1.2, 1.0, 1.0),
        (1.1, 1.0, 0.3),
        (1.5, 1.0, 2.0),
        (1.9, 1.0, 0.5),
        (1.3, 0.4, 1.5),
        (2.5, 1.0, 0.7),
    ] {
        out.push((
            PiecewiseBarrier::centered(&[(2.0 * d, u0)]).expect("rect"),
            e,
        ));
    }
    for &(e, steps) in &[
        (1.3, [(0.4, 1.0), (0.6, 0.0), (0.4, 1.0)]),
        (1.6, [(0.5, 1.5), (0.3, 0.2), (0.5, 1.5)]),
        (1.2, [(0.3, 0.5), (0.8, 1.2), (0.3, 0.5)]),
        (2.2, [(0.7, 0.3), (0.2, 1.9), (0.7, 0.3)]),
    ] {
        out.push((PiecewiseBarrier::centered(&steps).expect("steps"), e));
    }
    out
}

fn symmetric_barrier(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let cases = symmetric_cases();
    let mut phase = Check::tolerance("|alpha - beta - pi/2| (mod 2 pi)", 1e-8, s);
    let mut times = Check::tolerance(
        "max pairwise relative deviation of tau_T, tau_R, tau_L, tau_D",
        1e-6,
        s,
    );
    for (barrier, e) in &cases {
        let particle = ParticleState::new(*e, 1.0).expect("E > m");
        phase.record(
            scatter_channel(barrier, &particle, 0.0)
                .map(|r| wrap_angle(r.alpha - r.beta - 0.5 * PI).abs()),
        );
        times.record(
            clock_times(barrier, &particle, &FdOptions::default()).map(|t| {
                let v = [t.tau_t, t.tau_r.unwrap_or(f64::NAN), t.tau_l, t.tau_d];
                let mut worst = 0.0f64;
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        worst = worst.max((v[i] - v[j]).abs() / v[i].abs().min(v[j].abs()));
                    }
                }
                worst
            }),
        );
    }
    (cases.len(), vec![phase, times])
}

/// `(E_i, d_j)` grid: 20 energies in `(1, 2)` away from both thresholds,
/// 10 half-widths in `[0.1, 5]`.
pub fn closed_form_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..20 {
        let e = 1.02 + 0.96 * i as f64 / 19.0;
        for j in 0..10 {
            let d = 0.1 + 4.9 * j as f64 / 9.0;
            out.push((e, d));
        }
    }
    out
}

fn closed_form(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let grid = closed_form_grid();
    let mut equiv = Check::tolerance("|tau_T numeric - closed form| / max(1, tau_T)", 1e-8, s);
    for &(e, d) in &grid {
        let res = (|| {
            let particle = ParticleState::new(e, 1.0)?;
            let barrier = PiecewiseBarrier::centered(&[(2.0 * d, 1.0)])?;
            let numeric = channel_times(&barrier, &particle, &FdOptions::default())?.tau_t;
            let exact = analytic_rect_tau_t(e, 1.0, d, 1.0)?;
            Ok((numeric - exact).abs() / exact.abs().max(1.0))
        })();
        equiv.record(res);
    }
    let mut spot = Check::tolerance("|tau_T(E=1.2, U0=1, d=1) - 0.6938|", 5e-5, s);
    spot.record(analytic_rect_tau_t(1.2, 1.0, 1.0, 1.0).map(|t| (t - 0.6938).abs()));
    (grid.len(), vec![equiv, spot])
}

/// Half-widths of the Hartman sweep: 50 log-spaced in `[0.1, 5]` plus a
/// deep-opaque tail with `2 d kappa > 20`.
pub fn hartman_widths() -> Vec<f64> {
    let mut d: Vec<f64> = (0..50)
        .map(|i| (0.1f64.ln() + (5.0f64.ln() - 0.1f64.ln()) * i as f64 / 49.0).exp())
        .collect();
    d[49] = 5.0;
    d.extend([6.5, 8.0, 10.0, 15.0, 20.0]);
    d
}

fn hartman(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let (e, u0) = (1.2, 1.0);
    let widths = hartman_widths();
    let mut faster = Check::new("tau_T / tau_free for 2d > 1", Bound::Below { limit: 1.0 });
    let mut at_five = Check::tolerance("|tau_T(d = 5) - tau_inf|", 1e-8, s);
    let mut tail = Check::tolerance("|tau_T - tau_inf| for 2 d kappa > 20", 1e-8, s);
    let mut analytic = Check::tolerance("|tau_T - closed form|", 1e-8, s);
    let mut growth = Check::new(
        "|tau_free v_g / 2d - 1| (linear growth)",
        Bound::Below { limit: 1e-12 },
    );
    let mut limit = Check::tolerance("|tau_inf - 0.69096|", 1e-5, s);
    let tau_inf = tau_infinity(e, u0, 1.0);
    limit.record(tau_inf.clone().map(|t| (t - 0.69096).abs()));
    let kappa = ((1.0f64 + u0).powi(2) - e * e).sqrt();
    match (
        hartman_sweep(e, u0, 1.0, &widths, &FdOptions::default()),
        tau_inf,
    ) {
        (Ok(points), Ok(tau_inf)) => {
            let vg = ParticleState::new(e, 1.0).expect("E > m").group_velocity();
            for p in &points {
                if 2.0 * p.d > 1.0 {
                    faster.push(p.tau_t / p.tau_free);
                }
                if p.d == 5.0 {
                    at_five.push((p.tau_t - tau_inf).abs());
                }
                if 2.0 * p.d * kappa > 20.0 {
                    tail.push((p.tau_t - tau_inf).abs());
                }
                analytic.push((p.tau_t - p.tau_t_analytic).abs());
                growth.push((p.tau_free * vg / (2.0 * p.d) - 1.0).abs());
            }
        }
        (Err(e), _) | (_, Err(e)) => {
            for c in [&mut faster, &mut at_five, &mut tail, &mut analytic] {
                c.record(Err(e.clone()));
            }
        }
    }
    (
        widths.len(),
        vec![limit, faster, at_five, tail, analytic, growth],
    )
}

fn spin_cases() -> Vec<(PiecewiseBarrier, f64)> {
    vec![
        (
            PiecewiseBarrier::centered(&[(2.0, 1.0)]).expect("rect"),
            1.2,
        ),
        (
            PiecewiseBarrier::centered(&[(1.0, 0.5), (1.0, 1.0)]).expect("steps"),
            1.45,
        ),
        (
            PiecewiseBarrier::centered(&[(0.5, 1.5), (0.8, 0.2), (0.3, 1.0)]).expect("steps"),
            1.7,
        ),
        (
            PiecewiseBarrier::centered(&[(0.6, 1.2), (0.9, 0.4)]).expect("steps"),
            2.6,
        ),
    ]
}

fn spin_first_order(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let vs = [1e-4, 5e-5, 2.5e-5];
    let o = SpinOrientation::new(1.1, 0.4).expect("angles");
    let order = Bound::Within { lo: 1.9, hi: 2.1 };
    let mut t_order = Check::new("transmitted spin: order of exact - first order", order);
    let mut r_order = Check::new("reflected spin: order of exact - first order", order);
    let mut sum_order = Check::new("summed spin: order of exact - resummed", order);
    let mut s3 = Check::tolerance("|s3(V) - s3(0)| / V^2 of the summed spin", 1.0, s);
    let cases = spin_cases();
    for (barrier, e) in &cases {
        let res: Result<()> = (|| {
            let particle = ParticleState::new(*e, 1.0)?;
            let f0 = particle.f0;
            let d = first_order::ChannelDerivatives::compute(barrier, &particle, 1e-6)?;
            let s3_zero = summed_spin(&scatter_spin(barrier, &particle, 0.0)?, &o, f0).s3;
            let (mut dt, mut dr, mut ds) = (Vec::new(), Vec::new(), Vec::new());
            for &v in &vs {
                let pair = scatter_spin(barrier, &particle, v)?;
                dt.push(
                    transmitted_spin(&pair, &o, f0)
                        .distance(&first_order::transmitted(&d, &o, f0, v)),
                );
                dr.push(
                    reflected_spin(&pair, &o, f0).distance(&first_order::reflected(&d, &o, f0, v)),
                );
                let summed = summed_spin(&pair, &o, f0);
                ds.push(summed.distance(&first_order::summed_resummed(&d, &o, f0, v)));
                s3.push((summed.s3 - s3_zero).abs() / (v * v));
            }
            t_order.push(loglog_slope(&vs, &dt));
            r_order.push(loglog_slope(&vs, &dr));
            sum_order.push(loglog_slope(&vs, &ds));
            Ok(())
        })();
        if let Err(e) = res {
            for c in [&mut t_order, &mut r_order, &mut sum_order, &mut s3] {
                c.record(Err(e.clone()));
            }
        }
    }
    (cases.len(), vec![t_order, r_order, sum_order, s3])
}

fn clock_readout(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let family = random_family(s.seed.wrapping_add(7), 10);
    let o = SpinOrientation::new(0.5 * PI, 0.4).expect("angles");
    let mut agree = Check::tolerance("|read-out - tau_L| / tau_L at V = 1e-6", 1e-5, s);
    for case in &family {
        agree.record((|| {
            let reading = larmor_readout(&case.barrier, &case.particle, &o, 1e-6)?;
            let tau_l = larmor_time(&case.barrier, &case.particle, &FdOptions::default())?;
            Ok((reading.time - tau_l).abs() / tau_l.abs())
        })());
    }
    (family.len(), vec![agree])
}

fn oracle_equivalence(s: &ValidationSettings) -> (usize, Vec<Check>) {
    let family = random_family(s.seed, s.family_size);
    let mut t_mod = Check::tolerance("T modulus relative difference", 1e-6, s);
    let mut t_phase = Check::tolerance("T phase difference", 1e-6, s);
    let mut r_mod = Check::tolerance("R modulus relative difference", 1e-6, s);
    let mut r_phase = Check::tolerance("R phase difference (|R| > 1e-6)", 1e-6, s);
    for case in &family {
        let tm = scatter_channel(&case.barrier, &case.particle, 0.0);
        let ode = ode_oracle(&case.barrier, &case.particle, 0.0);
        match (tm, ode) {
            (Ok(a), Ok(b)) => {
                t_mod.push((a.t.norm() - b.t.norm()).abs() / a.t.norm());
                t_phase.push((a.t * b.t.conj()).arg().abs());
                r_mod.push((a.r.norm() - b.r.norm()).abs() / a.r.norm().max(1e-300));
                if a.r.norm() > 1e-6 {
                    r_phase.push((a.r * b.r.conj()).arg().abs());
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                for c in [&mut t_mod, &mut t_phase, &mut r_mod, &mut r_phase] {
                    c.record(Err(e.clone()));
                }
            }
        }
    }
    let nr = |e: f64| -> Result<f64> {
        let barrier = PiecewiseBarrier::centered(&[(2.0, 0.02)])?;
        let particle = ParticleState::new(e, 1.0)?;
        let dirac = channel_times(&barrier, &particle, &FdOptions::default())?.tau_t;
        let schr = schrodinger_reference(&barrier, e - 1.0, 1.0, 1e-6)?.tau_t;
        Ok((dirac - schr).abs() / schr.abs())
    };
    let mut nr_close = Check::tolerance("Dirac vs Schrodinger tau_T, E - m = 0.01", 1e-2, s);
    nr_close.record(nr(1.01));
    let mut nr_far = Check::new(
        "Dirac vs Schrodinger tau_T, E = 2m",
        Bound::Above { limit: 0.05 },
    );
    nr_far.record(nr(2.0));
    (
        family.len(),
        vec![t_mod, t_phase, r_mod, r_phase, nr_close, nr_far],
    )
}

/// Run one suite.
pub fn run_suite(suite: Suite, settings: &ValidationSettings) -> SuiteReport {
    let start = Instant::now();
    let (cases, checks) = match suite {
        Suite::CentralIdentity => central_identity(settings),
        Suite::Unitarity => unitarity(settings),
        Suite::SymmetricBarrier => symmetric_barrier(settings),
        Suite::ClosedForm => closed_form(settings),
        Suite::Hartman => hartman(settings),
        Suite::SpinFirstOrder => spin_first_order(settings),
        Suite::ClockReadout => clock_readout(settings),
        Suite::OracleEquivalence => oracle_equivalence(settings),
    };
    let elapsed_s = start.elapsed().as_secs_f64();
    let checks: Vec<CheckResult> = checks.into_iter().map(Check::finish).collect();
    let passed = checks.iter().all(|c| c.passed)
        && cases >= suite.min_cases()
        && elapsed_s <= suite.budget_s();
    SuiteReport {
        suite,
        name: suite.name(),
        cases,
        min_cases: suite.min_cases(),
        checks,
        elapsed_s,
        budget_s: suite.budget_s(),
        passed,
    }
}

/// Run every suite in order.
pub fn run_validation(settings: &ValidationSettings) -> ValidationReport {
    let suites: Vec<SuiteReport> = Suite::ALL.iter().map(|&s| run_suite(s, settings)).collect();
    ValidationReport {
        seed: settings.seed,
        tolerance_override: settings.tolerance_override,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_is_reproducible_and_asymmetric() {
        let a = random_family(3, 20);
        let b = random_family(3, 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.barrier, y.barrier);
            assert_eq!(x.particle.energy, y.particle.energy);
            assert!(x.barrier.len() >= 2 && x.barrier.len() <= 10);
            assert_ne!(x.barrier.segments(), x.barrier.mirrored().segments());
        }
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 2.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powi(2)).collect();
        assert!((loglog_slope(&x, &y) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wrapped_angles() {
        assert!((wrap_angle(-1.5 * PI) - 0.5 * PI).abs() < 1e-15);
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(2.0 * PI + 0.1) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn override_fails_tolerances() {
        let s = ValidationSettings {
            tolerance_override: Some(1e-20),
            ..Default::default()
        };
        let r = run_suite(Suite::SymmetricBarrier, &s);
        assert!(!r.passed);
        assert!(!r.violations().is_empty());
    }
}
