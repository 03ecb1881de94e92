//! Metric kernels for the three ambient geometries.
//!
//! Every geometry is handled in a conformal 2D chart so that angles between
//! chart vectors are the true metric angles:
//!
//! * `Euclidean`: the plane itself.
//! * `HyperbolicDisk`: the Poincaré disk `|z| < 1`, metric `2|dz| / (1 - |z|^2)`.
//! * `Spherical`: the unit sphere seen through stereographic projection from
//!   the antipode of the hemisphere pole, so the pole sits at the chart origin
//!   and the metric is `2|dz| / (1 + |z|^2)`. Points are restricted to the open
//!   hemisphere around the pole (with a margin of [`HEMISPHERE_MARGIN`] rad).
//!
//! In all three cases the orientation preserving isometry moving `a` to the
//! origin has the form `z -> (z - a) / (1 + k conj(a) z)` with `k = 0, -1, +1`
//! for the plane, disk and sphere respectively. Directions, exponential maps
//! and distances to lines are all computed by first moving the base point to
//! the origin with that map; its derivative there is a positive real multiple
//! of the identity, so chart directions survive unchanged.

use nalgebra::{Vector2, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// Two angles are considered equal when they differ by less than this after
/// reduction mod 2π.
pub const ANGLE_TOL: f64 = 1e-9;

/// Minimum angular distance (radians) between an admissible sphere point and
/// the equator of the working hemisphere.
pub const HEMISPHERE_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    Euclidean,
    Spherical,
    HyperbolicDisk,
}

impl GeometryKind {
    pub fn name(self) -> &'static str {
        match self {
            GeometryKind::Euclidean => "euclidean",
            GeometryKind::Spherical => "spherical",
            GeometryKind::HyperbolicDisk => "hyperbolic_disk",
        }
    }

    /// Gaussian curvature sign of the model: 0, +1 or -1.
    fn curvature_sign(self) -> f64 {
        match self {
            GeometryKind::Euclidean => 0.0,
            GeometryKind::Spherical => 1.0,
            GeometryKind::HyperbolicDisk => -1.0,
        }
    }

    /// Largest admissible chart radius (exclusive). Infinite for the plane.
    pub fn chart_radius_limit(self) -> f64 {
        match self {
            GeometryKind::Euclidean => f64::INFINITY,
            GeometryKind::Spherical => ((FRAC_PI_2 - HEMISPHERE_MARGIN) / 2.0).tan(),
            GeometryKind::HyperbolicDisk => 1.0,
        }
    }

    pub fn contains(self, p: Vec2) -> bool {
        p.x.is_finite() && p.y.is_finite() && p.norm() < self.chart_radius_limit()
    }

    pub fn check(self, p: Vec2) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::domain(self.name(), p))
        }
    }

    /// Conformal factor `lambda` with metric `lambda(p) |dp|`.
    pub fn conformal_factor(self, p: Vec2) -> f64 {
        match self {
            GeometryKind::Euclidean => 1.0,
            GeometryKind::Spherical => 2.0 / (1.0 + p.norm_squared()),
            GeometryKind::HyperbolicDisk => 2.0 / (1.0 - p.norm_squared()),
        }
    }

    /// Gradient of `log lambda` in chart coordinates.
    pub fn log_conformal_gradient(self, p: Vec2) -> Vec2 {
        match self {
            GeometryKind::Euclidean => Vec2::zeros(),
            GeometryKind::Spherical => -2.0 * p / (1.0 + p.norm_squared()),
            GeometryKind::HyperbolicDisk => 2.0 * p / (1.0 - p.norm_squared()),
        }
    }

    pub fn distance(self, x: Vec2, y: Vec2) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.distance_unchecked(x, y))
    }

    pub(crate) fn distance_unchecked(self, x: Vec2, y: Vec2) -> f64 {
        let chord = (x - y).norm();
        match self {
            GeometryKind::Euclidean => chord,
            GeometryKind::HyperbolicDisk => {
                let denom = ((1.0 - x.norm_squared()) * (1.0 - y.norm_squared())).sqrt();
                2.0 * (chord / denom).asinh()
            }
            GeometryKind::Spherical => {
                let w = 1.0 + c(x).conj() * c(y);
                2.0 * chord.atan2(w.norm())
            }
        }
    }

    /// Isometry sending `a` to the origin.
    fn to_origin(self, a: Vec2, z: Vec2) -> Vec2 {
        let (a, z) = (c(a), c(z));
        let k = self.curvature_sign();
        v((z - a) / (1.0 + k * a.conj() * z))
    }

    /// Inverse of [`Self::to_origin`].
    fn translate_from_origin(self, a: Vec2, w: Vec2) -> Vec2 {
        let (a, w) = (c(a), c(w));
        let k = self.curvature_sign();
        v((w + a) / (1.0 - k * a.conj() * w))
    }

    /// Chart radius of the point at geodesic distance `s` from the origin.
    fn radius_at_distance(self, s: f64) -> f64 {
        match self {
            GeometryKind::Euclidean => s,
            GeometryKind::HyperbolicDisk => (s / 2.0).tanh(),
            GeometryKind::Spherical => (s / 2.0).tan(),
        }
    }

    /// Initial chart direction (Euclidean unit length) of the geodesic from
    /// `from` to `to`. Equal to `-grad_from distance(from, to)` normalized.
    pub fn unit_direction(self, from: Vec2, to: Vec2) -> Result<Vec2> {
        self.check(from)?;
        self.check(to)?;
        self.unit_direction_unchecked(from, to)
    }

    pub(crate) fn unit_direction_unchecked(self, from: Vec2, to: Vec2) -> Result<Vec2> {
        let w = self.to_origin(from, to);
        let n = w.norm();
        if n <= 1e-300 || !n.is_finite() {
            return Err(Error::CoincidentPoints);
        }
        Ok(w / n)
    }

    /// Chart gradient of `x -> distance(x, y)`.
    pub fn distance_gradient(self, x: Vec2, y: Vec2) -> Result<Vec2> {
        Ok(-self.conformal_factor(x) * self.unit_direction_unchecked(x, y)?)
    }

    /// Metric angle at `p` between the geodesics `p -> a` and `p -> b`, in `[0, pi]`.
    pub fn angle_between(self, p: Vec2, a: Vec2, b: Vec2) -> Result<f64> {
        let da = self.unit_direction(p, a)?;
        let db = self.unit_direction(p, b)?;
        Ok(vector_angle(da, db))
    }

    /// Exponential map: the point at signed geodesic distance `s` from `base`
    /// along the chart direction `dir` (any nonzero length).
    pub fn exp(self, base: Vec2, dir: Vec2, s: f64) -> Vec2 {
        let u = dir.normalize();
        let w = u * self.radius_at_distance(s);
        self.translate_from_origin(base, w)
    }

    pub fn point_along(self, line: &GeodesicLine, s: f64) -> Vec2 {
        self.exp(line.base, line.direction, s)
    }

    /// Signed geodesic distance from `z` to `line`, positive on the left of
    /// the line's direction.
    pub fn signed_distance_to_line(self, line: &GeodesicLine, z: Vec2) -> f64 {
        let w = self.to_origin(line.base, z);
        let u = line.direction.normalize();
        let cross = u.x * w.y - u.y * w.x;
        match self {
            GeometryKind::Euclidean => cross,
            GeometryKind::HyperbolicDisk => (2.0 * cross / (1.0 - w.norm_squared())).asinh(),
            GeometryKind::Spherical => (2.0 * cross / (1.0 + w.norm_squared())).clamp(-1.0, 1.0).asin(),
        }
    }

    /// Intersection of two distinct geodesic lines inside the working domain.
    pub fn intersect_lines(self, l1: &GeodesicLine, l2: &GeodesicLine) -> Result<Vec2> {
        self.check(l1.base)?;
        self.check(l2.base)?;
        match self {
            GeometryKind::Euclidean => intersect_euclidean(l1, l2),
            _ => self.intersect_by_root_finding(l1, l2),
        }
    }

    fn intersect_by_root_finding(self, l1: &GeodesicLine, l2: &GeodesicLine) -> Result<Vec2> {
        const SCAN: usize = 512;
        let span = match self {
            GeometryKind::Spherical => PI,
            _ => 2.0 * (1.0 - 1e-9f64).atanh() + self.distance_unchecked(Vec2::zeros(), l1.base),
        };
        let phi = |s: f64| self.signed_distance_to_line(l2, self.point_along(l1, s));
        let mut samples: Vec<(f64, f64)> = Vec::with_capacity(SCAN + 1);
        for i in 0..=SCAN {
            let s = -span + 2.0 * span * i as f64 / SCAN as f64;
            let p = self.point_along(l1, s);
            if self.contains(p) {
                samples.push((s, phi(s)));
            }
        }
        if samples.iter().all(|&(_, f)| f.abs() < 1e-14) {
            return Err(Error::InvalidInput("geodesic lines coincide".into()));
        }
        // The bracket nearest the base of l1.
        let mut best: Option<(f64, f64)> = None;
        for w in samples.windows(2) {
            let ((s0, f0), (s1, f1)) = (w[0], w[1]);
            if f0 == 0.0 {
                best = pick_closer(best, (s0, s0));
            } else if f0.signum() != f1.signum() && f1 != 0.0 {
                best = pick_closer(best, (s0, s1));
            }
        }
        if let Some(&(s, f)) = samples.last() {
            if f == 0.0 {
                best = pick_closer(best, (s, s));
            }
        }
        let (lo, hi) = best.ok_or(Error::NoIntersection)?;
        let s = if lo == hi {
            lo
        } else {
            crate::numeric::find_root(phi, lo, hi, 1e-15)?
        };
        let slope = (phi(s + 1e-6) - phi(s - 1e-6)) / 2e-6;
        if slope.abs() < 1e-10 {
            return Err(Error::IllConditioned(1.0 / slope.abs().max(1e-300)));
        }
        let p = self.point_along(l1, s);
        self.check(p).map_err(|_| Error::NoIntersection)?;
        Ok(p)
    }

    /// Radius of the osculating circle for geodesic curvature `kappa > 0`, if
    /// such a circle exists in this geometry.
    pub fn curvature_radius(self, kappa: f64) -> Option<f64> {
        if !(kappa > 0.0) {
            return None;
        }
        match self {
            GeometryKind::Euclidean => Some(1.0 / kappa),
            GeometryKind::Spherical => Some((1.0f64).atan2(kappa)),
            GeometryKind::HyperbolicDisk => (kappa > 1.0).then(|| (1.0 / kappa).atanh()),
        }
    }

    /// Ratio of metric speeds of a parallel curve at distance `eps` (towards
    /// the convex side's exterior) to the original curve, for geodesic
    /// curvature `kappa` measured towards the interior.
    pub fn parallel_speed_factor(self, kappa: f64, eps: f64) -> f64 {
        match self {
            GeometryKind::Euclidean => 1.0 + kappa * eps,
            GeometryKind::Spherical => eps.cos() + kappa * eps.sin(),
            GeometryKind::HyperbolicDisk => eps.cosh() + kappa * eps.sinh(),
        }
    }

    /// Embeds a spherical chart point on the unit sphere (pole = +z).
    pub fn to_sphere(p: Vec2) -> Vector3<f64> {
        let r2 = p.norm_squared();
        Vector3::new(2.0 * p.x, 2.0 * p.y, 1.0 - r2) / (1.0 + r2)
    }

    /// Inverse of [`Self::to_sphere`] for points of the upper hemisphere.
    pub fn from_sphere(x: Vector3<f64>) -> Vec2 {
        let x = x.normalize();
        Vec2::new(x.x, x.y) / (1.0 + x.z)
    }
}

fn pick_closer(cur: Option<(f64, f64)>, cand: (f64, f64)) -> Option<(f64, f64)> {
    let d = |b: (f64, f64)| b.0.abs().min(b.1.abs());
    match cur {
        Some(b) if d(b) <= d(cand) => Some(b),
        _ => Some(cand),
    }
}

fn intersect_euclidean(l1: &GeodesicLine, l2: &GeodesicLine) -> Result<Vec2> {
    let (u1, u2) = (l1.direction.normalize(), l2.direction.normalize());
    let det = cross(u1, u2);
    if det == 0.0 {
        return Err(Error::NoIntersection);
    }
    // Singular values of [u1, -u2] for unit columns are sqrt(1 +- cos).
    let cos = u1.dot(&u2).abs();
    let cond = ((1.0 + cos) / (1.0 - cos).max(1e-300)).sqrt();
    if cond > 1e10 {
        return Err(Error::IllConditioned(cond));
    }
    let d = l2.base - l1.base;
    let s = cross(d, u2) / det;
    Ok(l1.base + s * u1)
}

/// A geodesic through `base` with chart direction `direction`.
///
/// The direction is stored with unit Euclidean chart length. Every chart is
/// conformal, so this fixes the same direction as a metric unit vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicLine {
    pub base: Vec2,
    pub direction: Vec2,
}

impl GeodesicLine {
    pub fn new(base: Vec2, direction: Vec2) -> Self {
        Self {
            base,
            direction: direction.normalize(),
        }
    }
}

/// An angle reduced to `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        let r = radians.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU
        Angle(if r >= TAU { 0.0 } else { r })
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn approx_eq(self, other: Angle) -> bool {
        let d = (self.0 - other.0).abs();
        d.min(TAU - d) < ANGLE_TOL
    }
}

/// Circle through `a` and `b` such that the chord is seen under the angle
/// `arc_measure / 2` from every point of the circle lying strictly on
/// `side` of the directed line `a -> b` (`side = +1` is the left).
///
/// Equivalently, the arc of measure `arc_measure` cut off by the chord lies on
/// the opposite side.
pub fn circle_through_chord(a: Vec2, b: Vec2, arc_measure: f64, side: f64) -> Result<(Vec2, f64)> {
    let chord = b - a;
    let len = chord.norm();
    if len <= 1e-300 {
        return Err(Error::CoincidentPoints);
    }
    if !(arc_measure > 0.0 && arc_measure < TAU) {
        return Err(Error::InvalidInput(format!(
            "arc measure {arc_measure} outside (0, 2pi)"
        )));
    }
    let view = arc_measure / 2.0;
    let radius = len / (2.0 * view.sin());
    let left = Vec2::new(-chord.y, chord.x) / len;
    let offset = 0.5 * len * view.cos() / view.sin();
    let center = 0.5 * (a + b) + side.signum() * offset * left;
    Ok((center, radius))
}

#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[inline]
pub fn rot90(a: Vec2) -> Vec2 {
    Vec2::new(-a.y, a.x)
}

#[inline]
pub fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}

/// Unsigned angle between two nonzero vectors, in `[0, pi]`.
pub fn vector_angle(a: Vec2, b: Vec2) -> f64 {
    cross(a, b).abs().atan2(a.dot(&b))
}

#[inline]
fn c(p: Vec2) -> Complex64 {
    Complex64::new(p.x, p.y)
}

#[inline]
fn v(z: Complex64) -> Vec2 {
    Vec2::new(z.re, z.im)
}
