use std::f64::consts::{FRAC_PI_2, TAU};
use std::sync::Arc;

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::curves::{FourierCurve, RadialChart, RadialCurve, SampledCurve, SupportCurve, TrigSeries};
use crate::error::{Error, Result};
use crate::geometry::{GeometryKind, Vec2, HEMISPHERE_MARGIN};
use crate::polygon::RegularPolygon;

/// One term `amplitude cos(k theta + phase)` of a radial perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Harmonic {
    pub k: usize,
    pub amplitude: f64,
    #[serde(default)]
    pub phase: f64,
}

/// Curve input, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    /// `q(alpha) = a0 + sum_k cos[k-1] cos(k alpha / n) + sin[k-1] sin(k alpha / n)`.
    SupportFourier {
        #[serde(default = "one")]
        rotation_index: usize,
        a0: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    /// Points at equally spaced parameters around a closed curve: chart
    /// coordinates `[x, y]` in the plane and the disk, unit vectors
    /// `[x, y, z]` on the sphere.
    ParametricSamples {
        #[serde(default = "euclidean")]
        geometry: GeometryKind,
        points: Vec<Vec<f64>>,
        #[serde(default)]
        max_harmonics: Option<usize>,
    },
    /// Near-circle in the Poincaré disk; `radius` is the Euclidean chart
    /// radius.
    DiskRadial {
        radius: f64,
        #[serde(default)]
        harmonics: Vec<Harmonic>,
    },
    /// Near-circle on the unit sphere; `radius` is the polar angle from the
    /// hemisphere pole.
    SphereRadial {
        radius: f64,
        #[serde(default)]
        harmonics: Vec<Harmonic>,
    },
    RegularPolygon {
        n: usize,
        #[serde(default = "unit_radius")]
        circumradius: f64,
    },
}

fn one() -> usize {
    1
}

fn unit_radius() -> f64 {
    1.0
}

fn euclidean() -> GeometryKind {
    GeometryKind::Euclidean
}

/// A curve spec turned into the object the algorithms consume.
#[derive(Debug, Clone)]
pub enum ParsedCurve {
    Support(SupportCurve),
    Sampled(SampledCurve),
    Polygon(RegularPolygon),
}

impl ParsedCurve {
    pub fn geometry(&self) -> GeometryKind {
        match self {
            ParsedCurve::Sampled(c) => c.geometry(),
            _ => GeometryKind::Euclidean,
        }
    }

    /// Chart coordinates of `n` points around the curve (the vertices for a
    /// polygon).
    pub fn polyline(&self, n: usize) -> Vec<Vec2> {
        match self {
            ParsedCurve::Support(sc) => {
                let n = n * sc.rotation_index;
                (0..n).map(|i| sc.point_at(sc.period() * i as f64 / n as f64)).collect()
            }
            ParsedCurve::Sampled(c) => {
                let m = c.model();
                (0..n).map(|i| m.point(c.period() * i as f64 / n as f64)).collect()
            }
            ParsedCurve::Polygon(p) => p.vertices.clone(),
        }
    }
}

impl CurveSpec {
    /// Parses a spec, reporting the line, column and field of any error.
    pub fn from_json(text: &str) -> Result<Self> {
        let e = match serde_json::from_str(text) {
            Ok(spec) => return Ok(spec),
            Err(e) => e,
        };
        if e.is_syntax() || e.is_eof() || serde_json::from_str::<serde_json::Value>(text).is_err() {
            return Err(Error::InvalidInput(format!("curve spec: {e}")));
        }
        // tagged content is buffered, so serde reports no position
        let msg = e.to_string();
        let (line, column) = locate(text, &msg);
        Err(Error::InvalidInput(format!("curve spec: {msg} at line {line} column {column}")))
    }

    pub fn geometry(&self) -> GeometryKind {
        match self {
            CurveSpec::ParametricSamples { geometry, .. } => *geometry,
            CurveSpec::DiskRadial { .. } => GeometryKind::HyperbolicDisk,
            CurveSpec::SphereRadial { .. } => GeometryKind::Spherical,
            _ => GeometryKind::Euclidean,
        }
    }

    pub fn build(&self) -> Result<ParsedCurve> {
        match self {
            CurveSpec::SupportFourier {
                rotation_index,
                a0,
                cos,
                sin,
            } => Ok(ParsedCurve::Support(SupportCurve::new(*rotation_index, *a0, cos.clone(), sin.clone())?)),
            CurveSpec::ParametricSamples {
                geometry,
                points,
                max_harmonics,
            } => {
                let chart = chart_points(*geometry, points)?;
                let model = FourierCurve::from_samples(&chart, *max_harmonics)?;
                Ok(ParsedCurve::Sampled(SampledCurve::new(Arc::new(model), *geometry)?))
            }
            CurveSpec::DiskRadial { radius, harmonics } => radial(RadialChart::Disk, *radius, harmonics, 1.0),
            CurveSpec::SphereRadial { radius, harmonics } => {
                radial(RadialChart::Sphere, *radius, harmonics, FRAC_PI_2 - HEMISPHERE_MARGIN)
            }
            CurveSpec::RegularPolygon { n, circumradius } => {
                Ok(ParsedCurve::Polygon(RegularPolygon::new(*n, *circumradius)?))
            }
        }
    }
}

/// Line and column of the first backquoted name of `msg` as a JSON key or
/// string in `text`, else of the outermost object.
fn locate(text: &str, msg: &str) -> (usize, usize) {
    let name = msg.split('`').nth(1);
    let offset = name
        .and_then(|n| text.find(&format!("\"{n}\"")))
        .or_else(|| text.find('{'))
        .unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn radial(chart: RadialChart, radius: f64, harmonics: &[Harmonic], limit: f64) -> Result<ParsedCurve> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let mut model = RadialCurve::new(chart, TrigSeries::constant(radius));
    for h in harmonics {
        if h.k == 0 || !h.amplitude.is_finite() || !h.phase.is_finite() {
            return Err(Error::InvalidInput(format!("bad harmonic {h:?}")));
        }
        model = model.with_harmonic(h.k, h.amplitude, h.phase);
    }
    let (lo, hi) = model.min_max_profile(4096);
    if lo <= 0.0 || hi >= limit {
        return Err(Error::InvalidInput(format!(
            "radial profile ranges over [{lo}, {hi}], outside (0, {limit})"
        )));
    }
    let g = match chart {
        RadialChart::Disk => GeometryKind::HyperbolicDisk,
        RadialChart::Sphere => GeometryKind::Spherical,
        RadialChart::Plane => GeometryKind::Euclidean,
    };
    Ok(ParsedCurve::Sampled(SampledCurve::new(Arc::new(model), g)?))
}

fn chart_points(g: GeometryKind, points: &[Vec<f64>]) -> Result<Vec<Vec2>> {
    let dim = if g == GeometryKind::Spherical { 3 } else { 2 };
    if let Some(i) = points.iter().position(|p| p.len() != dim) {
        return Err(Error::InvalidInput(format!(
            "points[{i}] has {} coordinates, {} geometry needs {dim}",
            points[i].len(),
            g.name()
        )));
    }
    if g != GeometryKind::Spherical {
        let out: Vec<Vec2> = points.iter().map(|p| Vec2::new(p[0], p[1])).collect();
        for p in &out {
            g.check(*p)?;
        }
        return Ok(out);
    }
    let unit: Vec<Vector3<f64>> = points
        .iter()
        .map(|p| Vector3::new(p[0], p[1], p[2]))
        .map(|v| {
            if (v.norm() - 1.0).abs() > 1e-9 {
                Err(Error::InvalidInput(format!("point {v:?} is not on the unit sphere")))
            } else {
                Ok(v.normalize())
            }
        })
        .collect::<Result<_>>()?;
    let sum: Vector3<f64> = unit.iter().sum();
    if sum.norm() < 1e-12 {
        return Err(Error::InvalidInput("samples have no centroid direction".into()));
    }
    // the centroid direction becomes the hemisphere pole
    let rot = Rotation3::rotation_between(&sum.normalize(), &Vector3::z())
        .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), TAU / 2.0));
    unit.iter()
        .map(|v| {
            let q = rot * v;
            if q.z.clamp(-1.0, 1.0).acos() >= FRAC_PI_2 - HEMISPHERE_MARGIN {
                return Err(Error::InvalidInput(format!("point {v:?} leaves the open hemisphere")));
            }
            Ok(GeometryKind::from_sphere(q))
        })
        .collect()
}
