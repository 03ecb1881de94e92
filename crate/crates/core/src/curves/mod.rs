//! Closed curve models and their dense samplings.
//!
//! A [`CurveModel`] is an analytic periodic parametrization in the chart of
//! some geometry; [`SampledCurve`] adds dense samples with tangents, normals
//! and geodesic curvature.

mod fourier;
mod sampled;
mod support;

use std::fmt::Debug;
use std::sync::Arc;

use crate::geometry::{rot90, GeometryKind, Vec2};

pub use fourier::{FourierCurve, RadialChart, RadialCurve, TrigSeries};
pub use sampled::{CurveSample, Equidistant, SampledCurve, DEFAULT_SAMPLES};
pub use support::SupportCurve;

/// Position and first two parameter derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub pos: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
}

pub trait CurveModel: Send + Sync + Debug {
    /// Parameter period of the closed curve.
    fn period(&self) -> f64;

    fn jet(&self, s: f64) -> Jet;

    fn point(&self, s: f64) -> Vec2 {
        self.jet(s).pos
    }
}

/// Parallel curve at signed geodesic distance `distance` to the right of a
/// base curve (outwards for counterclockwise convex curves).
#[derive(Debug, Clone)]
pub struct OffsetCurve {
    pub base: Arc<dyn CurveModel>,
    pub geometry: GeometryKind,
    pub distance: f64,
}

impl OffsetCurve {
    pub fn new(base: Arc<dyn CurveModel>, geometry: GeometryKind, distance: f64) -> Self {
        Self {
            base,
            geometry,
            distance,
        }
    }

    /// Position and exact parameter velocity.
    pub fn position_velocity(&self, s: f64) -> (Vec2, Vec2) {
        let g = self.geometry;
        let jet = self.base.jet(s);
        let speed = jet.d1.norm();
        let t = jet.d1 / speed;
        let right = -rot90(t);
        let pos = g.exp(jet.pos, right, self.distance);
        if self.distance == 0.0 {
            return (pos, jet.d1);
        }
        let kappa = geodesic_curvature(g, &jet);
        let factor = g.parallel_speed_factor(kappa, self.distance);
        // Outgoing direction of the normal geodesic at the offset point.
        let out = match g.unit_direction_unchecked(pos, jet.pos) {
            Ok(back) => -back * self.distance.signum(),
            Err(_) => right,
        };
        let metric_speed = speed * g.conformal_factor(jet.pos) * factor;
        (pos, rot90(out) * metric_speed / g.conformal_factor(pos))
    }
}

impl CurveModel for OffsetCurve {
    fn period(&self) -> f64 {
        self.base.period()
    }

    fn jet(&self, s: f64) -> Jet {
        let (pos, d1) = self.position_velocity(s);
        let h = 1e-5 * self.period();
        let (_, vp) = self.position_velocity(s + h);
        let (_, vm) = self.position_velocity(s - h);
        Jet {
            pos,
            d1,
            d2: (vp - vm) / (2.0 * h),
        }
    }

    fn point(&self, s: f64) -> Vec2 {
        let jet = self.base.jet(s);
        let right = -rot90(jet.d1.normalize());
        self.geometry.exp(jet.pos, right, self.distance)
    }
}

/// Signed geodesic curvature of a chart curve, positive when it turns left.
pub fn geodesic_curvature(g: GeometryKind, jet: &Jet) -> f64 {
    let speed = jet.d1.norm();
    let euclid = crate::geometry::cross(jet.d1, jet.d2) / speed.powi(3);
    let n = rot90(jet.d1 / speed);
    (euclid - g.log_conformal_gradient(jet.pos).dot(&n)) / g.conformal_factor(jet.pos)
}
