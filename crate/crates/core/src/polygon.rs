//! Tripod configurations of convex polygons: three lines through a common
//! point, each passing through a vertex perpendicular to a support line
//! there.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cross, unit, GeometryKind, Vec2};
use crate::triple_normal::{tau_center, Triangle};

/// Angles within this distance of a right angle are treated as equal to it.
pub const RIGHT_ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularPolygon {
    pub n: usize,
    pub circumradius: f64,
    pub vertices: Vec<Vec2>,
}

impl RegularPolygon {
    pub fn new(n: usize, circumradius: f64) -> Result<Self> {
        if n < 3 || !(circumradius > 0.0) || !circumradius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "regular polygon needs n >= 3 and a positive radius, got n = {n}, r = {circumradius}"
            )));
        }
        let vertices = (0..n)
            .map(|k| unit(TAU * k as f64 / n as f64) * circumradius)
            .collect();
        Ok(Self {
            n,
            circumradius,
            vertices,
        })
    }

    /// Interior angle at every vertex.
    pub fn vertex_angle(&self) -> f64 {
        PI - TAU / self.n as f64
    }
}

/// First isogonic center: the point seeing every side at `2 pi / 3`.
pub fn fermat_point(t: &Triangle) -> Result<Vec2> {
    let angles = t.angles();
    if let Some(&angle) = angles.iter().find(|&&a| a >= TAU / 3.0 - 1e-12) {
        return Err(Error::VertexFermat { angle });
    }
    let tc = tau_center(t, [PI / 3.0; 3])?;
    Ok(tc.center)
}

/// Angles at a chosen vertex between the line to the common point and the
/// two polygon edges there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportAngleCheck {
    pub vertex: usize,
    /// Angle towards the previous vertex.
    pub previous: f64,
    /// Angle towards the next vertex.
    pub next: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonTripod {
    pub indices: [usize; 3],
    pub fermat_point: Vec2,
    pub support_angle_checks: [SupportAngleCheck; 3],
    /// Largest distance from the common point to the three lines.
    pub concurrency_residual: f64,
    /// Largest deviation of the pairwise line angles from `2 pi / 3`.
    pub angle_residual: f64,
}

impl PolygonTripod {
    pub fn passes(&self) -> bool {
        self.concurrency_residual < 1e-10
            && self.angle_residual < 1e-10
            && self
                .support_angle_checks
                .iter()
                .all(|c| c.previous < FRAC_PI_2 && c.next < FRAC_PI_2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    /// The triangle has an angle of at least `2 pi / 3`.
    VertexFermat { angle: f64 },
    /// The line through `vertex` meets the edge towards `neighbor` at an
    /// angle that is not acute. `equality` marks a right angle.
    SupportAngle {
        vertex: usize,
        neighbor: usize,
        angle: f64,
        equality: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PolygonCheck {
    Accepted(PolygonTripod),
    Rejected(Rejection),
}

impl PolygonCheck {
    pub fn accepted(self) -> Option<PolygonTripod> {
        match self {
            PolygonCheck::Accepted(t) => Some(t),
            PolygonCheck::Rejected(_) => None,
        }
    }
}

/// Checks that `vertices` form a strictly convex counterclockwise polygon.
pub fn validate_convex(vertices: &[Vec2]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::InvalidInput("polygon needs at least 3 vertices".into()));
    }
    for i in 0..n {
        let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
        if !(cross(b - a, c - b) > 0.0) {
            return Err(Error::InvalidInput(format!(
                "polygon is not strictly convex and counterclockwise at vertex {}",
                (i + 1) % n
            )));
        }
    }
    let turn: f64 = (0..n)
        .map(|i| {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            let (u, v) = (b - a, c - b);
            cross(u, v).atan2(u.dot(&v))
        })
        .sum();
    if (turn - TAU).abs() > 1e-6 {
        return Err(Error::InvalidInput("polygon winds more than once".into()));
    }
    Ok(())
}

/// Certifies the triple `indices` of a convex counterclockwise polygon.
pub fn check_polygon_tripod(vertices: &[Vec2], indices: [usize; 3]) -> Result<PolygonCheck> {
    validate_convex(vertices)?;
    let n = vertices.len();
    if indices.iter().any(|&i| i >= n) || indices[0] == indices[1] || indices[1] == indices[2] || indices[0] == indices[2] {
        return Err(Error::InvalidInput(format!("bad vertex triple {indices:?} for {n} vertices")));
    }
    Ok(check_unchecked(vertices, indices))
}

fn check_unchecked(vertices: &[Vec2], indices: [usize; 3]) -> PolygonCheck {
    let n = vertices.len();
    let g = GeometryKind::Euclidean;
    let [a, b, c] = indices.map(|i| vertices[i]);
    let p = match Triangle::new(a, b, c).and_then(|t| fermat_point(&t)) {
        Ok(p) => p,
        Err(Error::VertexFermat { angle }) => return PolygonCheck::Rejected(Rejection::VertexFermat { angle }),
        Err(_) => return PolygonCheck::Rejected(Rejection::VertexFermat { angle: PI }),
    };
    let mut checks = [SupportAngleCheck {
        vertex: 0,
        previous: 0.0,
        next: 0.0,
    }; 3];
    for (slot, &k) in checks.iter_mut().zip(&indices) {
        let v = vertices[k];
        let (prev, next) = ((k + n - 1) % n, (k + 1) % n);
        let previous = g.angle_between(v, vertices[prev], p).unwrap_or(0.0);
        let next_angle = g.angle_between(v, vertices[next], p).unwrap_or(0.0);
        for (neighbor, angle) in [(next, next_angle), (prev, previous)] {
            if angle >= FRAC_PI_2 - RIGHT_ANGLE_TOL {
                return PolygonCheck::Rejected(Rejection::SupportAngle {
                    vertex: k,
                    neighbor,
                    angle,
                    equality: (angle - FRAC_PI_2).abs() <= RIGHT_ANGLE_TOL,
                });
            }
        }
        *slot = SupportAngleCheck {
            vertex: k,
            previous,
            next: next_angle,
        };
    }
    let dirs = [a, b, c].map(|v| (v - p).normalize());
    let angle_residual = (0..3)
        .map(|i| {
            let (u, w) = (dirs[i], dirs[(i + 1) % 3]);
            (cross(u, w).abs().atan2(u.dot(&w)) - TAU / 3.0).abs()
        })
        .fold(0.0, f64::max);
    let concurrency_residual = [a, b, c]
        .iter()
        .zip(&dirs)
        .map(|(v, d)| cross(*d, p - v).abs())
        .fold(0.0, f64::max);
    PolygonCheck::Accepted(PolygonTripod {
        indices,
        fermat_point: p,
        support_angle_checks: checks,
        concurrency_residual,
        angle_residual,
    })
}

/// All tripod configurations of a convex counterclockwise polygon, over
/// every vertex triple. A configuration is its three lines together with the
/// vertices they pass through, so distinct triples never coincide.
pub fn enumerate_polygon(vertices: &[Vec2]) -> Result<Vec<PolygonTripod>> {
    validate_convex(vertices)?;
    let n = vertices.len();
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
        .collect();
    Ok(triples
        .par_iter()
        .filter_map(|&t| check_unchecked(vertices, t).accepted())
        .collect())
}

pub fn enumerate_regular(n: usize) -> Result<Vec<PolygonTripod>> {
    let poly = RegularPolygon::new(n, 1.0)?;
    enumerate_polygon(&poly.vertices)
}

/// Number of tripod configurations of a regular `n`-gon.
pub fn regular_count(n: usize) -> usize {
    if n.is_multiple_of(3) {
        n / 3
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Triangle {
        Triangle::new(Vec2::new(a.0, a.1), Vec2::new(b.0, b.1), Vec2::new(c.0, c.1)).unwrap()
    }

    fn distance_sum(t: &Triangle, p: Vec2) -> f64 {
        t.vertices().iter().map(|v| (v - p).norm()).sum()
    }

    #[test]
    fn fermat_examples() {
        let t = tri((0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0));
        let f = fermat_point(&t).unwrap();
        assert!((f - (t.a + t.b + t.c) / 3.0).norm() < 1e-14);

        let flat = tri((0.0, 0.0), (1.0, 0.0), (0.5, 0.1));
        assert!(matches!(fermat_point(&flat), Err(Error::VertexFermat { .. })));

        let t = tri((0.0, 0.0), (4.0, 0.0), (2.0, 3.0));
        let f = fermat_point(&t).unwrap();
        let g = GeometryKind::Euclidean;
        for (x, y) in [(t.a, t.b), (t.b, t.c), (t.c, t.a)] {
            assert!((g.angle_between(f, x, y).unwrap() - TAU / 3.0).abs() < 1e-10);
        }
        // Weiszfeld iteration on the distance sum
        let mut p = (t.a + t.b + t.c) / 3.0;
        for _ in 0..2000 {
            let (mut num, mut den) = (Vec2::zeros(), 0.0);
            for v in t.vertices() {
                let w = 1.0 / (v - p).norm();
                num += v * w;
                den += w;
            }
            p = num / den;
        }
        assert!((p - f).norm() < 1e-9);
        assert!(distance_sum(&t, f) <= distance_sum(&t, p) + 1e-12);
    }

    #[test]
    fn small_polygons() {
        let tri = enumerate_regular(3).unwrap();
        assert_eq!(tri.len(), 1);
        assert!(tri[0].fermat_point.norm() < 1e-14);

        let sq = enumerate_regular(4).unwrap();
        assert_eq!(sq.len(), 4);

        let hex = enumerate_regular(6).unwrap();
        assert_eq!(hex.len(), 2);
        for t in &hex {
            let mut idx = t.indices;
            idx.sort();
            assert!(idx == [0, 2, 4] || idx == [1, 3, 5]);
        }
    }

    #[test]
    fn square_and_pentagon_triples() {
        let sq = RegularPolygon::new(4, 1.0).unwrap();
        assert!(check_polygon_tripod(&sq.vertices, [0, 1, 3]).unwrap().accepted().is_some());
        // the rotation of (0, 1, 3) by one step
        assert!(check_polygon_tripod(&sq.vertices, [0, 1, 2]).unwrap().accepted().is_some());
        let pent = RegularPolygon::new(5, 1.0).unwrap();
        assert!(check_polygon_tripod(&pent.vertices, [0, 2, 3]).unwrap().accepted().is_some());
        match check_polygon_tripod(&pent.vertices, [0, 1, 2]).unwrap() {
            PolygonCheck::Rejected(_) => {}
            other => panic!("{other:?}"),
        }
        assert!(check_polygon_tripod(&pent.vertices, [0, 0, 2]).is_err());
        let mut cw = pent.vertices.clone();
        cw.reverse();
        assert!(check_polygon_tripod(&cw, [0, 1, 3]).is_err());
    }

    #[test]
    fn counts_for_all_small_n() {
        for n in 3..=30 {
            let found = enumerate_regular(n).unwrap();
            assert_eq!(found.len(), regular_count(n), "n = {n}");
            assert!(found.iter().all(|t| t.passes()));
        }
    }

    #[test]
    fn isoceles_angle_formula() {
        for n in 3..=30usize {
            let poly = RegularPolygon::new(n, 1.0).unwrap();
            for k in 1..n {
                if 2 * k >= n {
                    break;
                }
                let Some(t) = check_unchecked(&poly.vertices, [0, k, n - k]).accepted() else { continue };
                let g = GeometryKind::Euclidean;
                let v = &poly.vertices;
                let angle = g.angle_between(v[k], v[k + 1], t.fermat_point).unwrap().to_degrees();
                let nf = n as f64;
                let formula = 90.0 + (120.0 * nf - 360.0 * k as f64 - 180.0) / nf;
                assert!((angle - formula).abs() < 1e-9, "n = {n}, k = {k}");
                assert!((120.0 * nf - 360.0 * k as f64).abs() < 180.0);
            }
        }
    }

    #[test]
    fn rotation_maps_configurations_to_themselves() {
        for n in [5, 7, 9, 12] {
            let found = enumerate_regular(n).unwrap();
            let sets: Vec<Vec<usize>> = found
                .iter()
                .map(|t| {
                    let mut s = t.indices.to_vec();
                    s.sort();
                    s
                })
                .collect();
            for s in &sets {
                let mut r: Vec<usize> = s.iter().map(|i| (i + 1) % n).collect();
                r.sort();
                assert!(sets.contains(&r));
            }
        }
    }
}
