//! Normal feet, tripod configurations and their residual certificates.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curves::{CurveModel, SampledCurve};
use crate::error::Result;
use crate::geometry::{rot90, GeodesicLine, GeometryKind, Vec2};

pub const TRIPOD_ANGLE: f64 = TAU / 3.0;

/// A curve point together with its oriented normal geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalFoot {
    pub param: f64,
    pub point: Vec2,
    pub normal: GeodesicLine,
}

impl NormalFoot {
    /// Foot at `param` with the right-hand normal of the direction of travel
    /// (outwards for counterclockwise convex curves), optionally flipped.
    pub fn on_model(model: &dyn CurveModel, param: f64, flip: bool) -> Self {
        let jet = model.jet(param);
        let right = -rot90(jet.d1.normalize());
        let dir = if flip { -right } else { right };
        Self {
            param,
            point: jet.pos,
            normal: GeodesicLine::new(jet.pos, dir),
        }
    }

    /// `|<normal, tangent>|` for the model tangent at this foot.
    pub fn orthogonality_residual(&self, model: &dyn CurveModel) -> f64 {
        let t = model.jet(self.param).d1.normalize();
        self.normal.direction.dot(&t).abs()
    }
}

/// Three normal geodesics meeting at `tripod_point`, with certificate data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripodConfiguration {
    pub geometry: GeometryKind,
    pub feet: [NormalFoot; 3],
    pub tripod_point: Vec2,
    /// Counterclockwise angles between consecutive oriented normals at the
    /// tripod point.
    pub angles: [f64; 3],
    pub concurrency_residual: f64,
    pub angle_residual: f64,
    /// Whether the unit vectors from the tripod point to the feet sum to zero.
    pub vector_balanced: bool,
    /// Whether the tripod point is enclosed by the curve, when known.
    pub inside: Option<bool>,
    /// Set for tangential zeros and near-singular Hessians.
    pub degenerate: bool,
}

impl TripodConfiguration {
    /// Builds and certifies a configuration. Feet are reordered so that the
    /// normal directions at the tripod point turn counterclockwise.
    pub fn certify(
        geometry: GeometryKind,
        mut feet: [NormalFoot; 3],
        tripod_point: Vec2,
        curve: Option<&SampledCurve>,
    ) -> Result<Self> {
        let dirs = directions_at(geometry, &feet, tripod_point)?;
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| polar(dirs[a]).total_cmp(&polar(dirs[b])));
        feet = order.map(|i| feet[i]);
        let dirs = order.map(|i| dirs[i]);
        let angles = oriented_gaps(&dirs, 1.0);
        let angle_residual = angles
            .iter()
            .map(|a| (a - TRIPOD_ANGLE).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            geometry,
            feet,
            tripod_point,
            angles,
            concurrency_residual: concurrency_residual(geometry, &feet, tripod_point),
            angle_residual,
            vector_balanced: vector_sum(geometry, &feet, tripod_point).norm() < 1e-8,
            inside: curve.map(|c| c.encloses(tripod_point)),
            degenerate: false,
        })
    }

    /// Recomputes all residuals from the stored coordinates.
    pub fn recertify(&self) -> Result<Self> {
        let mut again = Self::certify(self.geometry, self.feet, self.tripod_point, None)?;
        again.inside = self.inside;
        again.degenerate = self.degenerate;
        Ok(again)
    }

    pub fn passes(&self, diameter: f64) -> bool {
        self.concurrency_residual < 1e-7 * diameter && self.angle_residual < 1e-8
    }

    pub fn angle_sum(&self) -> f64 {
        self.angles.iter().sum()
    }

    pub fn sorted_params(&self, period: f64) -> [f64; 3] {
        let mut p = self.feet.map(|f| crate::numeric::wrap(f.param, period));
        p.sort_by(f64::total_cmp);
        p
    }

    /// Same tripod point and feet up to permutation.
    pub fn same_as(&self, other: &Self, period: f64, tol: f64) -> bool {
        if (self.tripod_point - other.tripod_point).norm() > tol {
            return false;
        }
        let (a, b) = (self.feet.map(|f| f.param), other.feet.map(|f| f.param));
        crate::numeric::same_circular_triple(&a, &b, period, tol)
    }
}

/// Direction at `p` of each foot's oriented normal geodesic.
pub fn directions_at(g: GeometryKind, feet: &[NormalFoot; 3], p: Vec2) -> Result<[Vec2; 3]> {
    let mut out = [Vec2::zeros(); 3];
    for (o, foot) in out.iter_mut().zip(feet) {
        *o = match g.unit_direction_unchecked(p, foot.point) {
            Ok(to_foot) => {
                // the geodesic from p arrives at the foot heading along
                // -unit_direction(foot -> p)
                let arrive = -g.unit_direction_unchecked(foot.point, p)?;
                if arrive.dot(&foot.normal.direction) >= 0.0 {
                    to_foot
                } else {
                    -to_foot
                }
            }
            Err(_) => foot.normal.direction,
        };
    }
    Ok(out)
}

/// Angles from `d[i]` to `d[i+1]` turning in the sense of `orientation`.
pub fn oriented_gaps(d: &[Vec2; 3], orientation: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        let delta = orientation * (polar(d[(i + 1) % 3]) - polar(d[i]));
        out[i] = crate::numeric::wrap(delta, TAU);
    }
    out
}

pub fn concurrency_residual(g: GeometryKind, feet: &[NormalFoot], p: Vec2) -> f64 {
    feet.iter()
        .map(|f| g.signed_distance_to_line(&f.normal, p).abs())
        .fold(0.0, f64::max)
}

/// Sum of the unit vectors from `p` towards the feet.
pub fn vector_sum(g: GeometryKind, feet: &[NormalFoot], p: Vec2) -> Vec2 {
    feet.iter()
        .filter_map(|f| g.unit_direction_unchecked(p, f.point).ok())
        .sum()
}

fn polar(v: Vec2) -> f64 {
    v.y.atan2(v.x)
}
