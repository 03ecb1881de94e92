use nalgebra::{Matrix2, Vector2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{geodesic_curvature, CurveModel, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::{rot90, GeometryKind, Vec2};
use crate::numeric::{circular_diff, wrap};

/// Grid resolution per parameter of the double-normal scan.
pub const DIAMETER_GRID: usize = 512;

/// A double normal: a geodesic chord meeting the curve orthogonally at both
/// ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diameter {
    pub param_a: f64,
    pub param_b: f64,
    pub a: Vec2,
    pub b: Vec2,
    pub length: f64,
    /// `+1` or `-1`; `0` when a center of curvature is missing or the
    /// centers coincide.
    pub orientation_sign: i32,
    pub center_a: Option<Vec2>,
    pub center_b: Option<Vec2>,
    pub radius_a: Option<f64>,
    pub radius_b: Option<f64>,
    /// Largest cosine between the chord and a tangent at its ends.
    pub orthogonality_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterSearch {
    pub diameters: Vec<Diameter>,
    /// Every normal is a double normal (circles, constant width).
    pub continuum: bool,
    pub positive: usize,
    pub negative: usize,
}

impl DiameterSearch {
    pub fn paired(&self) -> bool {
        self.positive == self.negative
    }
}

/// Cosines between the chord and the unit tangents at both ends.
fn residual(g: GeometryKind, model: &dyn CurveModel, s: f64, t: f64) -> Option<Vector2<f64>> {
    let (ja, jb) = (model.jet(s), model.jet(t));
    let ua = g.unit_direction_unchecked(ja.pos, jb.pos).ok()?;
    let ub = g.unit_direction_unchecked(jb.pos, ja.pos).ok()?;
    Some(Vector2::new(ua.dot(&ja.d1.normalize()), ub.dot(&jb.d1.normalize())))
}

/// Double normals of a simple closed convex curve by a grid scan of the
/// orthogonality defect followed by Newton refinement.
pub fn find_diameters(curve: &SampledCurve) -> Result<DiameterSearch> {
    let g = curve.geometry();
    let model = curve.model().as_ref();
    let period = curve.period();
    let n = DIAMETER_GRID;
    let params: Vec<f64> = (0..n).map(|i| period * i as f64 / n as f64).collect();
    let jets: Vec<_> = params.iter().map(|&s| model.jet(s)).collect();
    let tangents: Vec<Vec2> = jets.iter().map(|j| j.d1.normalize()).collect();

    let rows: Vec<(Vec<f64>, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![f64::INFINITY; n];
            let mut width: f64 = 0.0;
            for j in 0..n {
                let gap = (i as isize - j as isize).unsigned_abs();
                if gap.min(n - gap) < 3 {
                    continue;
                }
                let (a, b) = (jets[i].pos, jets[j].pos);
                width = width.max(g.distance_unchecked(a, b));
                if let (Ok(ua), Ok(ub)) = (g.unit_direction_unchecked(a, b), g.unit_direction_unchecked(b, a)) {
                    row[j] = ua.dot(&tangents[i]).powi(2) + ub.dot(&tangents[j]).powi(2);
                }
            }
            (row, width)
        })
        .collect();
    let widths: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let wmax = widths.iter().cloned().fold(0.0, f64::max);
    let wmin = widths.iter().cloned().fold(f64::INFINITY, f64::min);
    if wmax - wmin <= 1e-9 * wmax {
        return Ok(DiameterSearch {
            diameters: Vec::new(),
            continuum: true,
            positive: 0,
            negative: 0,
        });
    }
    let h: Vec<Vec<f64>> = rows.into_iter().map(|r| r.0).collect();
    let mut seeds = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = h[i][j];
            if !v.is_finite() || v > 0.5 {
                continue;
            }
            let mut is_min = true;
            'nb: for di in [n - 1, 0, 1] {
                for dj in [n - 1, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    if h[(i + di) % n][(j + dj) % n] < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                seeds.push((params[i], params[j]));
            }
        }
    }

    let refined: Vec<(f64, f64)> = seeds
        .par_iter()
        .filter_map(|&(s, t)| refine(g, model, s, t))
        .collect();
    let scale = 1e-7 * period;
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for (s, t) in refined {
        let (s, t) = (wrap(s, period), wrap(t, period));
        if circular_diff(s, t, period).abs() < 1e-3 * period {
            continue;
        }
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        let close = |x: f64, y: f64| circular_diff(x, y, period).abs() < scale;
        let dup = pairs
            .iter()
            .any(|&(a, b)| (close(a, s) && close(b, t)) || (close(a, t) && close(b, s)));
        if !dup {
            pairs.push((s, t));
        }
    }
    let diameters: Vec<Diameter> = pairs
        .into_iter()
        .map(|(s, t)| build(g, model, s, t))
        .collect::<Result<_>>()?;
    let positive = diameters.iter().filter(|d| d.orientation_sign > 0).count();
    let negative = diameters.iter().filter(|d| d.orientation_sign < 0).count();
    Ok(DiameterSearch {
        diameters,
        continuum: false,
        positive,
        negative,
    })
}

fn refine(g: GeometryKind, model: &dyn CurveModel, mut s: f64, mut t: f64) -> Option<(f64, f64)> {
    let h = 1e-6;
    let mut r = residual(g, model, s, t)?;
    for _ in 0..50 {
        if r.norm() < 1e-14 {
            break;
        }
        let ds = (residual(g, model, s + h, t)? - residual(g, model, s - h, t)?) / (2.0 * h);
        let dt = (residual(g, model, s, t + h)? - residual(g, model, s, t - h)?) / (2.0 * h);
        let j = Matrix2::from_columns(&[ds, dt]);
        let step = j.lu().solve(&(-r))?;
        let step = if step.norm() > 0.2 { step * (0.2 / step.norm()) } else { step };
        let mut lambda = 1.0;
        loop {
            let (s1, t1) = (s + lambda * step.x, t + lambda * step.y);
            if let Some(r1) = residual(g, model, s1, t1) {
                if r1.norm() < r.norm() {
                    s = s1;
                    t = t1;
                    r = r1;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return (r.norm() < 1e-10).then_some((s, t));
            }
        }
    }
    (r.norm() < 1e-10).then_some((s, t))
}

/// Radius and inward center of curvature at a parameter.
fn curvature_center(g: GeometryKind, model: &dyn CurveModel, s: f64) -> Option<(f64, Vec2)> {
    let jet = model.jet(s);
    let kappa = geodesic_curvature(g, &jet);
    let radius = g.curvature_radius(kappa.abs())?;
    let inward = rot90(jet.d1.normalize()) * kappa.signum();
    Some((radius, g.exp(jet.pos, inward, radius)))
}

fn build(g: GeometryKind, model: &dyn CurveModel, s: f64, t: f64) -> Result<Diameter> {
    let (a, b) = (model.point(s), model.point(t));
    let length = g.distance(a, b)?;
    let r = residual(g, model, s, t).ok_or(Error::CoincidentPoints)?;
    let ca = curvature_center(g, model, s);
    let cb = curvature_center(g, model, t);
    // all four points lie on the chord's geodesic: with a at 0 and b at
    // `length`, the centers sit at `radius_a` and `length - radius_b`
    let orientation_sign = match (ca, cb) {
        (Some((ra, _)), Some((rb, _))) => {
            let gap = length - ra - rb;
            if gap.abs() < 1e-12 * length {
                0
            } else {
                gap.signum() as i32
            }
        }
        _ => 0,
    };
    Ok(Diameter {
        param_a: s,
        param_b: t,
        a,
        b,
        length,
        orientation_sign,
        center_a: ca.map(|c| c.1),
        center_b: cb.map(|c| c.1),
        radius_a: ca.map(|c| c.0),
        radius_b: cb.map(|c| c.0),
        orthogonality_residual: r.x.abs().max(r.y.abs()),
    })
}
