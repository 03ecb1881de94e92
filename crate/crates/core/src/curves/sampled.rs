use std::f64::consts::TAU;
use std::sync::Arc;

use super::{geodesic_curvature, CurveModel, OffsetCurve};
use crate::error::{Error, Result};
use crate::geometry::{cross, rot90, GeometryKind, Vec2};

/// Samples per full turn of the parameter.
pub const DEFAULT_SAMPLES: usize = 4096;

const MAX_SAMPLES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub param: f64,
    pub point: Vec2,
    /// Unit chart tangent.
    pub tangent: Vec2,
    /// Left unit chart normal.
    pub normal: Vec2,
    /// Signed geodesic curvature (positive when turning left).
    pub curvature: f64,
    /// Metric arc length from the first sample.
    pub arclength: f64,
}

/// Regular closed curve densely sampled at uniform parameter steps. The last
/// sample repeats the first one at parameter `period`.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    geometry: GeometryKind,
    model: Arc<dyn CurveModel>,
    samples: Vec<CurveSample>,
    length: f64,
}

/// Result of an equidistant construction.
#[derive(Debug, Clone)]
pub struct Equidistant {
    pub curve: SampledCurve,
    /// False when the parallel curve develops cusps.
    pub regular: bool,
    pub min_speed_factor: f64,
}

impl SampledCurve {
    /// Samples with [`DEFAULT_SAMPLES`] points per `2 pi` of parameter.
    pub fn new(model: Arc<dyn CurveModel>, geometry: GeometryKind) -> Result<Self> {
        let turns = (model.period() / TAU).round().max(1.0) as usize;
        Self::with_samples(model, geometry, DEFAULT_SAMPLES * turns)
    }

    /// Samples with at least `count` points, refining until consecutive
    /// samples are within `length / 2048` of each other.
    pub fn with_samples(model: Arc<dyn CurveModel>, geometry: GeometryKind, count: usize) -> Result<Self> {
        let mut count = count.max(16);
        loop {
            let curve = Self::sample(model.clone(), geometry, count)?;
            let max_step = curve
                .samples
                .windows(2)
                .map(|w| w[1].arclength - w[0].arclength)
                .fold(0.0, f64::max);
            if max_step <= curve.length / 2048.0 || count >= MAX_SAMPLES {
                return Ok(curve);
            }
            count *= 2;
        }
    }

    fn sample(model: Arc<dyn CurveModel>, geometry: GeometryKind, count: usize) -> Result<Self> {
        let period = model.period();
        let mut samples = Vec::with_capacity(count + 1);
        let mut arclength = 0.0;
        for i in 0..=count {
            let param = period * i as f64 / count as f64;
            let jet = model.jet(param);
            geometry.check(jet.pos)?;
            let speed = jet.d1.norm();
            if !(speed > 0.0) || !speed.is_finite() {
                return Err(Error::MalformedCurve(format!(
                    "curve is not regular at parameter {param}"
                )));
            }
            let tangent = jet.d1 / speed;
            if let Some(prev) = samples.last() {
                let prev: &CurveSample = prev;
                arclength += geometry.distance_unchecked(prev.point, jet.pos);
            }
            samples.push(CurveSample {
                param,
                point: jet.pos,
                tangent,
                normal: rot90(tangent),
                curvature: geodesic_curvature(geometry, &jet),
                arclength,
            });
        }
        Ok(Self {
            geometry,
            model,
            samples,
            length: arclength,
        })
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    pub fn model(&self) -> &Arc<dyn CurveModel> {
        &self.model
    }

    pub fn period(&self) -> f64 {
        self.model.period()
    }

    /// All samples including the closing repeat.
    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    /// Samples without the closing repeat.
    pub fn open_samples(&self) -> &[CurveSample] {
        &self.samples[..self.samples.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        let (a, b) = (self.samples[0].point, self.samples[self.samples.len() - 1].point);
        (a - b).norm() < 1e-10
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> Vec<Vec2> {
        self.open_samples().iter().map(|s| s.point).collect()
    }

    /// Total turning of the chart tangent divided by `2 pi`.
    pub fn rotation_index(&self) -> Result<i64> {
        let mut turning = 0.0;
        for w in self.samples.windows(2) {
            let (a, b) = (w[0].tangent, w[1].tangent);
            turning += cross(a, b).atan2(a.dot(&b));
        }
        let index = turning / TAU;
        let rounded = index.round();
        if (index - rounded).abs() > 1e-6 {
            return Err(Error::MalformedCurve(format!(
                "total turning {index} is not an integer multiple of 2pi"
            )));
        }
        Ok(rounded as i64)
    }

    /// Centers of geodesic curvature. Fails at an inflection, or where the
    /// osculating circle does not exist (horocyclic curvature in the disk).
    pub fn evolute(&self) -> Result<Vec<Vec2>> {
        let g = self.geometry;
        let scale = 1e-9 / self.length.max(1e-300);
        let mut out = Vec::with_capacity(self.samples.len());
        for (i, s) in self.open_samples().iter().enumerate() {
            let next = self.samples[i + 1].curvature;
            if s.curvature.abs() < scale || s.curvature.signum() != next.signum() {
                return Err(Error::Inflection(s.param));
            }
            let radius = g.curvature_radius(s.curvature.abs()).ok_or(Error::NoCurvatureCenter {
                param: s.param,
                curvature: s.curvature,
            })?;
            out.push(g.exp(s.point, s.normal * s.curvature.signum(), radius));
        }
        Ok(out)
    }

    /// Smallest metric radius of curvature over the samples.
    pub fn min_radius_of_curvature(&self) -> Option<f64> {
        self.open_samples()
            .iter()
            .map(|s| self.geometry.curvature_radius(s.curvature.abs()))
            .try_fold(f64::INFINITY, |acc, r| r.map(|r| acc.min(r)))
    }

    /// Parallel curve at signed geodesic distance `r` towards the right of
    /// the direction of travel (outwards for counterclockwise convex curves).
    pub fn equidistant(&self, r: f64) -> Result<Equidistant> {
        let g = self.geometry;
        let min_speed_factor = self
            .open_samples()
            .iter()
            .map(|s| g.parallel_speed_factor(s.curvature, r))
            .fold(f64::INFINITY, f64::min);
        let model = Arc::new(OffsetCurve::new(self.model.clone(), g, r));
        let count = self.samples.len() - 1;
        let regular = min_speed_factor > 1e-9;
        let curve = if regular {
            Self::with_samples(model, g, count)?
        } else {
            Self::sample_positions(model, g, count)?
        };
        Ok(Equidistant {
            curve,
            regular,
            min_speed_factor,
        })
    }

    /// Sampling that tolerates singular points: tangents fall back to the
    /// neighbouring chord and curvature is reported as zero.
    fn sample_positions(model: Arc<dyn CurveModel>, geometry: GeometryKind, count: usize) -> Result<Self> {
        let period = model.period();
        let pts: Vec<Vec2> = (0..=count)
            .map(|i| model.point(period * i as f64 / count as f64))
            .collect();
        let mut samples = Vec::with_capacity(count + 1);
        let mut arclength = 0.0;
        for i in 0..=count {
            geometry.check(pts[i])?;
            let next = pts[(i + 1).min(count)];
            let prev = pts[i.saturating_sub(1)];
            let chord = next - prev;
            let tangent = if chord.norm() > 0.0 {
                chord.normalize()
            } else {
                Vec2::new(1.0, 0.0)
            };
            if i > 0 {
                arclength += geometry.distance_unchecked(pts[i - 1], pts[i]);
            }
            samples.push(CurveSample {
                param: period * i as f64 / count as f64,
                point: pts[i],
                tangent,
                normal: rot90(tangent),
                curvature: 0.0,
                arclength,
            });
        }
        Ok(Self {
            geometry,
            model,
            samples,
            length: arclength,
        })
    }

    /// Winding number of the chart polygon around `p`.
    pub fn winding_number(&self, p: Vec2) -> i64 {
        let mut total = 0.0;
        for w in self.samples.windows(2) {
            let (a, b) = (w[0].point - p, w[1].point - p);
            total += cross(a, b).atan2(a.dot(&b));
        }
        (total / TAU).round() as i64
    }

    pub fn encloses(&self, p: Vec2) -> bool {
        self.winding_number(p) != 0
    }

    /// Area centroid of the chart polygon.
    pub fn centroid(&self) -> Vec2 {
        super::support::polygon_centroid(&self.points())
    }

    /// Largest metric distance between two curve points (on a subsampling
    /// of at most 1024 points).
    pub fn diameter(&self) -> f64 {
        let pts = self.points();
        max_pairwise(self.geometry, &subsample(&pts, 1024))
    }

    /// Metric diameter of the evolute, or `None` when it does not exist.
    pub fn evolute_diameter(&self) -> Option<f64> {
        let ev = self.evolute().ok()?;
        Some(max_pairwise(self.geometry, &subsample(&ev, 1024)))
    }

    /// Indices (into [`Self::open_samples`]) of the convex hull vertices of
    /// the chart points, counterclockwise.
    pub fn hull_indices(&self) -> Vec<usize> {
        convex_hull(&self.points())
    }

    /// Parameter of the sample closest to `p` in the chart.
    pub fn nearest_param(&self, p: Vec2) -> f64 {
        self.open_samples()
            .iter()
            .min_by(|a, b| (a.point - p).norm_squared().total_cmp(&(b.point - p).norm_squared()))
            .map(|s| s.param)
            .unwrap_or(0.0)
    }
}

fn subsample(pts: &[Vec2], max: usize) -> Vec<Vec2> {
    let step = pts.len().div_ceil(max).max(1);
    pts.iter().step_by(step).copied().collect()
}

fn max_pairwise(g: GeometryKind, pts: &[Vec2]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(g.distance_unchecked(pts[i], pts[j]));
        }
    }
    best
}

/// Andrew's monotone chain. Returns indices of hull vertices in
/// counterclockwise order, without collinear points.
pub fn convex_hull(pts: &[Vec2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a]
            .x
            .total_cmp(&pts[b].x)
            .then(pts[a].y.total_cmp(&pts[b].y))
    });
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| cross(pts[a] - pts[o], pts[b] - pts[o]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for &i in idx.iter() {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    let lower = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}
