use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{NormalFoot, TripodConfiguration};
use crate::curves::SampledCurve;
use crate::error::Result;
use crate::geometry::{unit, Vec2};
use crate::numeric::{hessian, morse_index, same_circular_triple, symmetric_eigenvalues, wrap};

use super::{find_diameters, CriticalKind, CriticalPoint, TripodSpace, DEGENERATE_EIGENVALUE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Offset of the parallel curve; defaults to a twentieth of the smallest
    /// radius of curvature.
    pub epsilon: Option<f64>,
    /// Equally spaced foot parameters per coordinate.
    pub foot_seeds: usize,
    /// Tripod point seeds besides the centroid.
    pub point_seeds: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            epsilon: None,
            foot_seeds: 24,
            point_seeds: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteriorSearch {
    pub epsilon: f64,
    /// One representative per orbit under permutation of the feet.
    pub critical_points: Vec<CriticalPoint>,
    pub configurations: Vec<TripodConfiguration>,
    /// Critical points come in a continuous family (e.g. circles).
    pub continuum: bool,
    pub starts: usize,
    pub converged: usize,
    /// Evolute diameter over the shortest double normal; small for curves
    /// close to circles.
    pub closeness: Option<f64>,
    pub diagnostics: Vec<String>,
}

const GRADIENT_TOL: f64 = 1e-9;

enum Outcome {
    Converged([f64; 5], f64),
    Outside,
    Failed,
}

/// Multi-start search for interior critical points of the tripod
/// functional.
pub fn find_interior_critical_points(curve: &SampledCurve, options: &SearchOptions) -> Result<InteriorSearch> {
    let space = TripodSpace::new(curve, options.epsilon)?;
    let period = space.period();
    let g = space.geometry;

    let m = options.foot_seeds.max(6);
    let (lo, hi) = ((m as f64 / 4.0).round() as usize, (5.0 * m as f64 / 12.0).round() as usize);
    let mut triples = Vec::new();
    for i in 0..m {
        for g1 in lo..=hi {
            for g2 in lo..=hi {
                let g3 = m as isize - (g1 + g2) as isize;
                if g3 < lo as isize || g3 > hi as isize {
                    continue;
                }
                let (j, k) = (i + g1, i + g1 + g2);
                if k < m {
                    triples.push([i, j, k].map(|x| period * x as f64 / m as f64));
                }
            }
        }
    }
    let center = curve.centroid();
    let inradius = curve
        .open_samples()
        .iter()
        .map(|s| (s.point - center).norm())
        .fold(f64::INFINITY, f64::min);
    let mut points = vec![center];
    for k in 0..options.point_seeds {
        let angle = std::f64::consts::TAU * k as f64 / options.point_seeds as f64;
        points.push(center + unit(angle) * (0.25 * inradius));
    }
    let starts: Vec<[f64; 5]> = triples
        .iter()
        .flat_map(|t| points.iter().map(move |p| [t[0], t[1], t[2], p.x, p.y]))
        .collect();

    let scale = curve.diameter().max(1e-300);
    let outcomes: Vec<Outcome> = starts.par_iter().map(|x0| newton(&space, curve, scale, *x0)).collect();
    let converged: Vec<([f64; 5], f64)> = outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Converged(x, gn) => Some((*x, *gn)),
            _ => None,
        })
        .collect();
    let outside = outcomes.iter().filter(|o| matches!(o, Outcome::Outside)).count();

    let mut reps: Vec<([f64; 5], f64)> = Vec::new();
    for (x, gn) in &converged {
        let mut x = *x;
        let mut feet = [x[0], x[1], x[2]].map(|s| wrap(s, period));
        feet.sort_by(f64::total_cmp);
        x[..3].copy_from_slice(&feet);
        let dup = reps.iter().any(|(y, _)| {
            same_circular_triple(&[x[0], x[1], x[2]], &[y[0], y[1], y[2]], period, 1e-6)
                && (Vec2::new(x[3], x[4]) - Vec2::new(y[3], y[4])).norm() < 1e-7 * scale
        });
        if !dup {
            reps.push((x, *gn));
        }
    }

    let mut diagnostics = Vec::new();
    if outside > 0 {
        diagnostics.push(format!("{outside} starts left the region bounded by the curve"));
    }
    let mut critical_points: Vec<CriticalPoint> = reps
        .par_iter()
        .map(|(x, gn)| {
            let f = |y: &DVector<f64>| space.value_raw(y.as_slice());
            let h = hessian(&f, &DVector::from_row_slice(x), 1e-4);
            let ev = symmetric_eigenvalues(&h);
            let (index, degenerate) = morse_index(&ev, DEGENERATE_EIGENVALUE);
            CriticalPoint {
                location: space.point(x[0], x[1], x[2], Vec2::new(x[3], x[4])),
                kind: CriticalKind::Interior,
                morse_index: index,
                gradient_norm: *gn,
                hessian_eigenvalues: ev,
                degenerate,
                orbit_size: 6,
            }
        })
        .collect();
    let continuum = critical_points.iter().any(|c| c.degenerate);
    if continuum {
        diagnostics.push(format!(
            "{} converged points lie on a degenerate critical family",
            critical_points.len()
        ));
        critical_points.clear();
    }
    let mut configurations = Vec::new();
    for cp in &critical_points {
        let l = cp.location;
        let feet = [l.t, l.u, l.v].map(|s| NormalFoot::on_model(space.base.as_ref(), s, false));
        configurations.push(TripodConfiguration::certify(g, feet, l.p, Some(curve))?);
    }
    if critical_points.is_empty() && !continuum {
        diagnostics.push("no start converged to an interior critical point".into());
    }
    let closeness = closeness_score(curve);
    Ok(InteriorSearch {
        epsilon: space.epsilon,
        critical_points,
        configurations,
        continuum,
        starts: starts.len(),
        converged: converged.len(),
        closeness,
        diagnostics,
    })
}

fn closeness_score(curve: &SampledCurve) -> Option<f64> {
    let ev = curve.evolute_diameter()?;
    let ds = find_diameters(curve).ok()?;
    let shortest = ds.diameters.iter().map(|d| d.length).fold(f64::INFINITY, f64::min);
    if ds.continuum {
        return Some(ev / curve.diameter());
    }
    shortest.is_finite().then(|| ev / shortest)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Damped Newton iteration on the gradient. Also used to re-converge
/// permuted starts.
fn newton(space: &TripodSpace, curve: &SampledCurve, scale: f64, x0: [f64; 5]) -> Outcome {
    let mut x = x0;
    let Ok(mut gx) = space.gradient_raw(&x) else { return Outcome::Failed };
    let mut mu = 1e-3;
    for _ in 0..100 {
        let gn = norm(&gx);
        if gn < 1e-14 {
            break;
        }
        let Some(j) = jacobian(space, &x) else { return Outcome::Failed };
        let jt = j.transpose();
        let jtj = &jt * &j;
        let rhs = -(&jt * DVector::from_row_slice(&gx));
        let mut accepted = false;
        while mu < 1e10 {
            let mut a = jtj.clone();
            for i in 0..5 {
                a[(i, i)] += mu * (1.0 + jtj[(i, i)]);
            }
            let Some(step) = a.lu().solve(&rhs) else {
                mu *= 10.0;
                continue;
            };
            let mut step: Vec<f64> = step.iter().copied().collect();
            let sn = norm(&step[..3]).max(norm(&step[3..]) / (0.2 * scale));
            if sn > 0.5 {
                step.iter_mut().for_each(|s| *s *= 0.5 / sn);
            }
            let mut y = x;
            for i in 0..5 {
                y[i] += step[i];
            }
            match space.gradient_raw(&y) {
                Ok(gy) if norm(&gy) < gn => {
                    x = y;
                    gx = gy;
                    mu = (mu / 4.0).max(1e-15);
                    accepted = true;
                    break;
                }
                _ => mu *= 4.0,
            }
        }
        if !accepted {
            break;
        }
    }
    let gn = norm(&gx);
    if gn > GRADIENT_TOL {
        return Outcome::Failed;
    }
    let p = Vec2::new(x[3], x[4]);
    if !curve.encloses(p) {
        return Outcome::Outside;
    }
    Outcome::Converged(x, gn)
}

fn jacobian(space: &TripodSpace, x: &[f64; 5]) -> Option<DMatrix<f64>> {
    let mut j = DMatrix::zeros(5, 5);
    let h = 1e-6;
    for k in 0..5 {
        let (mut a, mut b) = (*x, *x);
        a[k] += h;
        b[k] -= h;
        let (ga, gb) = (space.gradient_raw(&a).ok()?, space.gradient_raw(&b).ok()?);
        for i in 0..5 {
            j[(i, k)] = (ga[i] - gb[i]) / (2.0 * h);
        }
    }
    let sym = (&j + j.transpose()) * 0.5;
    Some(sym)
}

/// Re-converges from `x` and reports the critical point reached.
#[cfg(test)]
pub(crate) fn local_newton(space: &TripodSpace, curve: &SampledCurve, x: [f64; 5]) -> Option<[f64; 5]> {
    match newton(space, curve, curve.diameter(), x) {
        Outcome::Converged(y, _) => Some(y),
        _ => None,
    }
}
