//! Barrier profiles `U(x)` with finite support `[a, b]` and their
//! piecewise-constant discretization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// User-facing description of a barrier, as it appears in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileSpec {
    /// Height `U0` on `[-d, d]`.
    Rectangular {
        #[serde(rename = "U0")]
        u0: f64,
        d: f64,
    },
    /// Consecutive `(length, height)` steps starting at `start`.
    /// Without `start` the barrier is centered on the origin.
    Piecewise {
        segments: Vec<(f64, f64)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start: Option<f64>,
    },
    /// `(x, U)` samples, linearly interpolated; zero outside the sample range.
    Sampled { points: Vec<(f64, f64)> },
    /// `U0 exp(-x^2 / width^2)` sampled on `[-4 width, 4 width]`.
    Gaussian {
        #[serde(rename = "U0")]
        u0: f64,
        width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    Rectangular { u0: f64, d: f64 },
    Piecewise { segments: Vec<Segment> },
    Sampled { points: Vec<(f64, f64)> },
}

/// Scalar potential with support `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierProfile {
    pub kind: ProfileKind,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub length: f64,
    pub height: f64,
}

/// Piecewise-constant barrier: consecutive segments starting at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseBarrier {
    start: f64,
    segments: Vec<Segment>,
}

pub const GAUSSIAN_TRUNCATION: f64 = 4.0;
pub const DEFAULT_GAUSSIAN_NODES: usize = 2001;

fn check_height(h: f64) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::MalformedProfile(format!("non-finite height {h}")));
    }
    Ok(())
}

fn check_length(l: f64, what: &str) -> Result<()> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::MalformedProfile(format!(
            "{what} must be positive, got {l}"
        )));
    }
    Ok(())
}

/// Build a canonical profile from its description.
pub fn make_profile(spec: &ProfileSpec) -> Result<BarrierProfile> {
    match spec {
        ProfileSpec::Rectangular { u0, d } => BarrierProfile::rectangular(*u0, *d),
        ProfileSpec::Piecewise { segments, start } => {
            let segs = segments
                .iter()
                .map(|&(length, height)| Segment { length, height })
                .collect::<Vec<_>>();
            BarrierProfile::piecewise(segs, *start)
        }
        ProfileSpec::Sampled { points } => BarrierProfile::sampled(points.clone()),
        ProfileSpec::Gaussian { u0, width, nodes } => {
            BarrierProfile::gaussian(*u0, *width, nodes.unwrap_or(DEFAULT_GAUSSIAN_NODES))
        }
    }
}

impl BarrierProfile {
    pub fn rectangular(u0: f64, d: f64) -> Result<Self> {
        check_height(u0)?;
        if !(u0 > 0.0) {
            return Err(Error::MalformedProfile(format!(
                "rectangular height must be positive, got {u0}"
            )));
        }
        check_length(d, "half width")?;
        Ok(Self {
            kind: ProfileKind::Rectangular { u0, d },
            a: -d,
            b: d,
        })
    }

    pub fn piecewise(segments: Vec<Segment>, start: Option<f64>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::MalformedProfile("no segments".into()));
        }
        for s in &segments {
            check_length(s.length, "segment length")?;
            check_height(s.height)?;
        }
        let total: f64 = segments.iter().map(|s| s.length).sum();
        let a = start.unwrap_or(-0.5 * total);
        if !a.is_finite() {
            return Err(Error::MalformedProfile("non-finite start".into()));
        }
        Ok(Self {
            kind: ProfileKind::Piecewise { segments },
            a,
            b: a + total,
        })
    }

    pub fn sampled(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::MalformedProfile("need at least two samples".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::MalformedProfile(
                    "sample abscissae must be strictly increasing".into(),
                ));
            }
        }
        for &(x, u) in &points {
            if !x.is_finite() {
                return Err(Error::MalformedProfile(format!("non-finite x {x}")));
            }
            check_height(u)?;
        }
        let a = points[0].0;
        let b = points[points.len() - 1].0;
        Ok(Self {
            kind: ProfileKind::Sampled { points },
            a,
            b,
        })
    }

    /// `U0 exp(-x^2 / w^2)` on a uniform grid of `nodes` points over `[-4w, 4w]`.
    pub fn gaussian(u0: f64, width: f64, nodes: usize) -> Result<Self> {
        check_height(u0)?;
        check_length(width, "gaussian width")?;
        if nodes < 2 {
            return Err(Error::MalformedProfile("need at least two nodes".into()));
        }
        let half = GAUSSIAN_TRUNCATION * width;
        let points = (0..nodes)
            .map(|i| {
                let x = -half + 2.0 * half * i as f64 / (nodes - 1) as f64;
                (x, u0 * (-(x / width).powi(2)).exp())
            })
            .collect();
        Self::sampled(points)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// `U(x)`, zero outside `[a, b]`.
    pub fn potential_at(&self, x: f64) -> f64 {
        if x < self.a || x > self.b {
            return 0.0;
        }
        match &self.kind {
            ProfileKind::Rectangular { u0, .. } => *u0,
            ProfileKind::Piecewise { segments } => {
                let mut left = self.a;
                for s in segments {
                    if x < left + s.length {
                        return s.height;
                    }
                    left += s.length;
                }
                segments.last().map_or(0.0, |s| s.height)
            }
            ProfileKind::Sampled { points } => {
                let i = points.partition_point(|&(px, _)| px <= x);
                if i == 0 {
                    return points[0].1;
                }
                if i >= points.len() {
                    return points[points.len() - 1].1;
                }
                let (x0, u0) = points[i - 1];
                let (x1, u1) = points[i];
                u0 + (u1 - u0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Points where `U` is discontinuous or has a kink, including `a` and `b`.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Rectangular { .. } => vec![self.a, self.b],
            ProfileKind::Piecewise { segments } => {
                let mut out = Vec::with_capacity(segments.len() + 1);
                let mut x = self.a;
                out.push(x);
                for s in segments {
                    x += s.length;
                    out.push(x);
                }
                out
            }
            ProfileKind::Sampled { points } => points.iter().map(|p| p.0).collect(),
        }
    }

    /// The exact piecewise-constant representation, if the profile has one.
    pub fn exact_segments(&self) -> Option<PiecewiseBarrier> {
        match &self.kind {
            ProfileKind::Rectangular { u0, d } => Some(PiecewiseBarrier {
                start: self.a,
                segments: vec![Segment {
                    length: 2.0 * d,
                    height: *u0,
                }],
            }),
            ProfileKind::Piecewise { segments } => Some(PiecewiseBarrier {
                start: self.a,
                segments: segments.clone(),
            }),
            ProfileKind::Sampled { .. } => None,
        }
    }

    /// Exact segments where available, otherwise `discretize(n)`.
    pub fn to_piecewise(&self, n: usize) -> Result<PiecewiseBarrier> {
        match self.exact_segments() {
            Some(p) => Ok(p),
            None => discretize(self, n),
        }
    }
}

/// `n` equal-length segments with heights sampled at their midpoints.
pub fn discretize(profile: &BarrierProfile, n: usize) -> Result<PiecewiseBarrier> {
    if n == 0 {
        return Err(Error::invalid("n_segments", "segment count must be >= 1"));
    }
    let len = profile.length() / n as f64;
    let segments = (0..n)
        .map(|i| Segment {
            length: len,
            height: profile.potential_at(profile.a + (i as f64 + 0.5) * len),
        })
        .collect();
    Ok(PiecewiseBarrier {
        start: profile.a,
        segments,
    })
}

impl PiecewiseBarrier {
    pub fn new(start: f64, segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::MalformedProfile("no segments".into()));
        }
        if !start.is_finite() {
            return Err(Error::MalformedProfile("non-finite start".into()));
        }
        for s in &segments {
            check_length(s.length, "segment length")?;
            check_height(s.height)?;
        }
        Ok(Self { start, segments })
    }

    /// Convenience constructor from `(length, height)` pairs, centered on the origin.
    pub fn centered(steps: &[(f64, f64)]) -> Result<Self> {
        let total: f64 = steps.iter().map(|s| s.0).sum();
        Self::new(
            -0.5 * total,
            steps
                .iter()
                .map(|&(length, height)| Segment { length, height })
                .collect(),
        )
    }

    /// Zero-height barrier on `[start, start + length]`.
    pub fn empty_region(start: f64, length: f64) -> Result<Self> {
        Self::new(
            start,
            vec![Segment {
                length,
                height: 0.0,
            }],
        )
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.start + self.total_length()
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Spatial reflection `x -> -x`.
    pub fn mirrored(&self) -> Self {
        let mut segments = self.segments.clone();
        segments.reverse();
        Self {
            start: -self.end(),
            segments,
        }
    }

    /// Same barrier with segment `index` split at fraction `t` of its length.
    pub fn split_segment(&self, index: usize, t: f64) -> Self {
        let mut segments = self.segments.clone();
        let s = segments[index];
        segments[index].length = s.length * t;
        segments.insert(
            index + 1,
            Segment {
                length: s.length * (1.0 - t),
                height: s.height,
            },
        );
        Self {
            start: self.start,
            segments,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangular_support() {
        let p = make_profile(&ProfileSpec::Rectangular { u0: 1.0, d: 1.0 }).unwrap();
        assert_eq!((p.a, p.b), (-1.0, 1.0));
        assert_eq!(p.potential_at(0.3), 1.0);
        assert_eq!(p.potential_at(1.5), 0.0);
        assert_eq!(p.exact_segments().unwrap().len(), 1);
    }

    #[test]
    fn rectangular_exact_for_any_n() {
        let p = BarrierProfile::rectangular(1.0, 1.0).unwrap();
        for n in [1, 5, 17] {
            let pw = discretize(&p, n).unwrap();
            assert_eq!(pw.len(), n);
            assert!(pw.segments().iter().all(|s| s.height == 1.0));
            assert!((pw.total_length() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gaussian_support() {
        let p = BarrierProfile::gaussian(1.0, 0.5, 401).unwrap();
        assert_eq!((p.a, p.b), (-2.0, 2.0));
        assert!((p.potential_at(0.0) - 1.0).abs() < 1e-12);
        assert!(p.potential_at(-2.0) < 1e-6);
        // linear interpolation between nodes
        let mid = p.potential_at(0.01);
        assert!((mid - (-(0.01f64 / 0.5).powi(2)).exp()).abs() < 1e-4);
    }

    #[test]
    fn two_step_aligned_discretization_is_exact() {
        let p = make_profile(&ProfileSpec::Piecewise {
            segments: vec![(1.0, 0.5), (1.0, 1.0)],
            start: None,
        })
        .unwrap();
        assert_eq!((p.a, p.b), (-1.0, 1.0));
        let d = discretize(&p, 2).unwrap();
        assert_eq!(d.segments(), p.exact_segments().unwrap().segments());
    }

    #[test]
    fn malformed_profiles() {
        assert!(matches!(
            BarrierProfile::rectangular(1.0, 0.0),
            Err(Error::MalformedProfile(_))
        ));
        assert!(matches!(
            BarrierProfile::piecewise(
                vec![Segment {
                    length: -1.0,
                    height: 0.0
                }],
                None
            ),
            Err(Error::MalformedProfile(_))
        ));
        assert!(matches!(
            BarrierProfile::piecewise(
                vec![Segment {
                    length: 1.0,
                    height: f64::INFINITY
                }],
                None
            ),
            Err(Error::MalformedProfile(_))
        ));
        assert!(BarrierProfile::sampled(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
    }

    #[test]
    fn mirror_and_split() {
        let b = PiecewiseBarrier::new(
            0.0,
            vec![
                Segment {
                    length: 1.0,
                    height: 0.5,
                },
                Segment {
                    length: 2.0,
                    height: 1.0,
                },
            ],
        )
        .unwrap();
        let m = b.mirrored();
        assert_eq!(m.start(), -3.0);
        assert_eq!(m.segments()[0].height, 1.0);
        let s = b.split_segment(1, 0.25);
        assert_eq!(s.len(), 3);
        assert!((s.total_length() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn spec_roundtrips_through_json() {
        let spec = ProfileSpec::Gaussian {
            u0: 1.0,
            width: 0.5,
            nodes: None,
        };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"kind":"gaussian","U0":1.0,"width":0.5}"#);
        assert_eq!(serde_json::from_str::<ProfileSpec>(&s).unwrap(), spec);
    }
}
