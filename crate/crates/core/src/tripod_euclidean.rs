//! Tripod configurations of locally convex Euclidean curves given by a
//! support function.
//!
//! For a curve of rotation index `n`, three normals with normal angles
//! `alpha + 2 pi i / 3`, `alpha + 2 pi j / 3`, `alpha + 2 pi k / 3`
//! (`i, j, k` pairwise distinct mod 3) are concurrent exactly when the
//! corresponding sum of `p = q'` values vanishes, since `p(alpha)` is the
//! signed distance from the origin to the normal line at `alpha`.

use std::f64::consts::TAU;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{NormalFoot, TripodConfiguration};
use crate::curves::{SampledCurve, SupportCurve};
use crate::error::{Error, Result};
use crate::geometry::{unit, GeodesicLine, GeometryKind};
use crate::numeric::find_root;

/// Scan resolution per `2 pi` of normal angle.
pub const SCAN_POINTS: usize = 8192;
/// `max |F|` below which a p-sum is treated as identically zero.
pub const CONTINUUM_TOL: f64 = 1e-10;
/// `|F'|` below which a root is reported as tangential.
pub const TANGENTIAL_TOL: f64 = 1e-8;

/// An equivalence class of index triples `{0, j, k}` in `Z / 3n`, with
/// `j = 1` and `k = 2 (mod 3)`, under the shift relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexClass {
    pub representative: [usize; 3],
    /// Distinct normalized triples `[0, j, k]` in the class.
    pub orbit: Vec<[usize; 3]>,
}

impl IndexClass {
    pub fn j(&self) -> usize {
        self.representative[1]
    }

    pub fn k(&self) -> usize {
        self.representative[2]
    }
}

/// The three normalizations of `{0, j, k}` obtained by moving each element
/// to 0 and re-sorting the remaining two by residue.
fn normalizations(n: usize, j: usize, k: usize) -> [(usize, usize); 3] {
    let m = 3 * n;
    [
        (j, k),
        ((k + m - j) % m, (m - j) % m),
        ((m - k) % m, (j + m - k) % m),
    ]
}

pub fn enumerate_classes(n: usize) -> Vec<IndexClass> {
    assert!(n >= 1, "rotation index must be positive");
    let m = 3 * n;
    let mut seen = vec![false; m * m];
    let mut out = Vec::new();
    for j in (1..m).step_by(3) {
        for k in (2..m).step_by(3) {
            if seen[j * m + k] {
                continue;
            }
            let mut orbit: Vec<(usize, usize)> = normalizations(n, j, k).to_vec();
            orbit.sort();
            orbit.dedup();
            for &(a, b) in &orbit {
                seen[a * m + b] = true;
            }
            out.push(IndexClass {
                representative: [0, j, k],
                orbit: orbit.iter().map(|&(a, b)| [0, a, b]).collect(),
            });
        }
    }
    out
}

/// Lower bound `2 ceil((n^2 + 2) / 3)` on the number of tripod
/// configurations of a locally convex curve with rotation index `n`.
pub fn tripod_lower_bound(n: usize) -> usize {
    2 * (n * n + 2).div_ceil(3)
}

/// `F(alpha) = p(alpha + 2 pi i/3) + p(alpha + 2 pi j/3) + p(alpha + 2 pi k/3)`.
pub fn p_sum(sc: &SupportCurve, class: &[usize; 3], alpha: f64) -> f64 {
    class.iter().map(|&i| sc.p(alpha + TAU * i as f64 / 3.0)).sum()
}

fn p_sum_derivative(sc: &SupportCurve, class: &[usize; 3], alpha: f64) -> f64 {
    class
        .iter()
        .map(|&i| sc.derivatives(alpha + TAU * i as f64 / 3.0)[2])
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: [usize; 3],
    pub roots: Vec<f64>,
    pub tangential_roots: usize,
    pub max_abs: f64,
    pub continuum: bool,
    /// Brackets that failed to converge.
    pub failures: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripodSearch {
    pub rotation_index: usize,
    pub configurations: Vec<TripodConfiguration>,
    pub continuum: bool,
    pub classes: Vec<ClassReport>,
    pub diameter: f64,
    pub lower_bound: usize,
}

impl TripodSearch {
    pub fn all_certified(&self) -> bool {
        self.configurations.iter().all(|c| c.passes(self.diameter))
    }

    pub fn meets_lower_bound(&self) -> bool {
        self.continuum || self.configurations.len() >= self.lower_bound
    }
}

fn scan_class(sc: &SupportCurve, class: [usize; 3]) -> ClassReport {
    let period = sc.period();
    let n = SCAN_POINTS * sc.rotation_index;
    let step = period / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| p_sum(sc, &class, step * i as f64)).collect();
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut report = ClassReport {
        class,
        roots: Vec::new(),
        tangential_roots: 0,
        max_abs,
        continuum: max_abs < CONTINUUM_TOL,
        failures: Vec::new(),
    };
    if report.continuum {
        return report;
    }
    let f = |a: f64| p_sum(sc, &class, a);
    for i in 0..n {
        let (a, b) = (step * i as f64, step * (i + 1) as f64);
        let (fa, fb) = (values[i], values[i + 1]);
        let root = if fa == 0.0 {
            Ok(a)
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            find_root(f, a, b, 1e-15)
        } else {
            continue;
        };
        match root {
            Ok(r) if f(r).abs() < 1e-12 => {
                if p_sum_derivative(sc, &class, r).abs() < TANGENTIAL_TOL {
                    report.tangential_roots += 1;
                }
                report.roots.push(r);
            }
            _ => report.failures.push((a, b)),
        }
    }
    report
}

fn configuration_at(
    sc: &SupportCurve,
    class: &[usize; 3],
    alpha: f64,
    curve: &SampledCurve,
    degenerate: bool,
) -> Result<TripodConfiguration> {
    let feet = class.map(|i| {
        let a = crate::numeric::wrap(alpha + TAU * i as f64 / 3.0, sc.period());
        let point = sc.point_at(a);
        NormalFoot {
            param: a,
            point,
            normal: GeodesicLine::new(point, unit(a)),
        }
    });
    let g = GeometryKind::Euclidean;
    let p = g.intersect_lines(&feet[0].normal, &feet[1].normal)?;
    let mut config = TripodConfiguration::certify(g, feet, p, Some(curve))?;
    config.degenerate = degenerate;
    Ok(config)
}

/// Locates every tripod configuration of `sc` reachable from the p-sum
/// zeros of all index classes.
pub fn find_tripods(sc: &SupportCurve) -> Result<TripodSearch> {
    sc.validate()?;
    let n = sc.rotation_index;
    let curve = SampledCurve::new(Arc::new(sc.clone()), GeometryKind::Euclidean)?;
    let diameter = curve.diameter();
    let classes = enumerate_classes(n);
    let reports: Vec<ClassReport> = classes
        .par_iter()
        .map(|c| scan_class(sc, c.representative))
        .collect();
    let continuum = reports.iter().any(|r| r.continuum);
    let mut configurations: Vec<TripodConfiguration> = Vec::new();
    let dedup_tol = 1e-7 * diameter.max(1.0);
    for report in &reports {
        for &root in &report.roots {
            let degenerate = p_sum_derivative(sc, &report.class, root).abs() < TANGENTIAL_TOL;
            let config = configuration_at(sc, &report.class, root, &curve, degenerate)?;
            if !configurations
                .iter()
                .any(|c| c.same_as(&config, sc.period(), dedup_tol))
            {
                configurations.push(config);
            }
        }
    }
    Ok(TripodSearch {
        rotation_index: n,
        configurations,
        continuum,
        classes: reports,
        diameter,
        lower_bound: tripod_lower_bound(n),
    })
}

/// Whether `q(a) + q(a + 2pi/3) + q(a + 4pi/3)` is constant, i.e. every
/// normal belongs to a tripod configuration.
pub fn delta_curve_test(sc: &SupportCurve) -> Result<bool> {
    if sc.rotation_index != 1 {
        return Err(Error::InvalidInput(
            "the triangle-rotor test needs rotation index 1".into(),
        ));
    }
    let (lo, hi) = (0..SCAN_POINTS)
        .map(|i| {
            let a = TAU * i as f64 / SCAN_POINTS as f64;
            (0..3).map(|k| sc.q(a + TAU * k as f64 / 3.0)).sum::<f64>()
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    Ok(hi - lo < 1e-10)
}

/// Compares the tripod points of `sc` with those of its parallel curve at
/// distance `r`.
pub fn equidistant_invariance_check(sc: &SupportCurve, r: f64) -> Result<bool> {
    let a = find_tripods(sc)?;
    let b = find_tripods(&sc.offset(r))?;
    if a.continuum || b.continuum {
        return Ok(a.continuum == b.continuum);
    }
    let matched = |xs: &[TripodConfiguration], ys: &[TripodConfiguration]| {
        xs.iter().all(|x| {
            ys.iter()
                .any(|y| (x.tripod_point - y.tripod_point).norm() < 1e-7)
        })
    };
    Ok(matched(&a.configurations, &b.configurations) && matched(&b.configurations, &a.configurations))
}
