//! Triple normals with prescribed angles, through maximal circumscribing
//! triangles of fixed shape, plus the tau-center and antipedal triangle
//! constructions they rest on.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{concurrency_residual, directions_at, oriented_gaps, NormalFoot};
use crate::curves::SampledCurve;
use crate::error::{Error, Result};
use crate::geometry::{circle_through_chord, cross, rot90, unit, GeodesicLine, GeometryKind, Vec2};
use crate::numeric::{find_root, golden_max, wrap};

/// Resolution of the rotation scan.
pub const ROTATION_SCAN: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Vec2,
    pub b: Vec2,
    pub c: Vec2,
}

impl Triangle {
    pub fn new(a: Vec2, b: Vec2, c: Vec2) -> Result<Self> {
        let t = Self { a, b, c };
        if t.area() > 1e-12 {
            Ok(t)
        } else {
            Err(Error::DegenerateTriangle)
        }
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * cross(self.b - self.a, self.c - self.a)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn vertices(&self) -> [Vec2; 3] {
        [self.a, self.b, self.c]
    }

    /// Interior angles at `a`, `b`, `c`.
    pub fn angles(&self) -> [f64; 3] {
        let g = GeometryKind::Euclidean;
        let v = self.vertices();
        [0, 1, 2].map(|i| {
            g.angle_between(v[i], v[(i + 1) % 3], v[(i + 2) % 3])
                .unwrap_or(0.0)
        })
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let s = self.signed_area().signum();
        let v = self.vertices();
        (0..3).all(|i| s * cross(v[(i + 1) % 3] - v[i], p - v[i]) > 0.0)
    }

    /// Largest distance between matching vertices.
    pub fn vertex_distance(&self, other: &Triangle) -> f64 {
        self.vertices()
            .iter()
            .zip(other.vertices())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauCenter {
    pub triangle: Triangle,
    pub taus: [f64; 3],
    pub center: Vec2,
    /// Distance of the center from the third circle.
    pub circle_residual: f64,
    /// Set when the first two circles only meet at their shared vertex.
    pub degenerate: bool,
}

/// The point `P` with `angle APB = pi - tau1`, `angle BPC = pi - tau2`,
/// `angle CPA = pi - tau3`: the second intersection of the circles on `AB`
/// and `BC` cutting arcs `2 tau1`, `2 tau2` on the sides of `C` and `A`.
pub fn tau_center(t: &Triangle, taus: [f64; 3]) -> Result<TauCenter> {
    if t.area() <= 1e-12 {
        return Err(Error::DegenerateTriangle);
    }
    if taus.iter().any(|&x| !(x > 0.0 && x < PI)) || (taus.iter().sum::<f64>() - PI).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "tau angles {taus:?} must lie in (0, pi) and sum to pi"
        )));
    }
    let side = |p: Vec2, q: Vec2, r: Vec2| cross(q - p, r - p).signum();
    let (a, b, c) = (t.a, t.b, t.c);
    let (o1, _) = circle_through_chord(a, b, 2.0 * (PI - taus[0]), side(a, b, c))?;
    let (o2, _) = circle_through_chord(b, c, 2.0 * (PI - taus[1]), side(b, c, a))?;
    let (o3, r3) = circle_through_chord(c, a, 2.0 * (PI - taus[2]), side(c, a, b))?;
    let scale = (b - a).norm().max((c - b).norm()).max((a - c).norm());
    let axis = o2 - o1;
    if axis.norm() < 1e-12 * scale {
        return Ok(TauCenter {
            triangle: *t,
            taus,
            center: b,
            circle_residual: 0.0,
            degenerate: true,
        });
    }
    let d = axis / axis.norm();
    let rel = b - o1;
    let center = o1 + d * (2.0 * rel.dot(&d)) - rel;
    Ok(TauCenter {
        triangle: *t,
        taus,
        center,
        circle_residual: ((center - o3).norm() - r3).abs(),
        degenerate: (center - b).norm() < 1e-9 * scale,
    })
}

/// Triangle bounded by the lines through `A`, `B`, `C` perpendicular to
/// `PA`, `PB`, `PC`; vertices in the order `(L_A ^ L_B, L_B ^ L_C, L_C ^ L_A)`.
pub fn antipedal_triangle(t: &Triangle, p: Vec2) -> Result<Triangle> {
    let g = GeometryKind::Euclidean;
    let line = |v: Vec2| -> Result<GeodesicLine> {
        let r = v - p;
        if r.norm() < 1e-300 {
            return Err(Error::CoincidentPoints);
        }
        Ok(GeodesicLine::new(v, rot90(r)))
    };
    let (la, lb, lc) = (line(t.a)?, line(t.b)?, line(t.c)?);
    Ok(Triangle {
        a: g.intersect_lines(&la, &lb)?,
        b: g.intersect_lines(&lb, &lc)?,
        c: g.intersect_lines(&lc, &la)?,
    })
}

/// Similarity class of triangles: interior angles `taus` (summing to `pi`)
/// and an orientation `+1` (counterclockwise) or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityClass {
    pub taus: [f64; 3],
    pub orientation: f64,
}

impl SimilarityClass {
    pub fn new(taus: [f64; 3], orientation: f64) -> Result<Self> {
        if taus.iter().any(|&x| !(x > 0.0 && x < PI)) || (taus.iter().sum::<f64>() - PI).abs() > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "triangle angles {taus:?} must lie in (0, pi) and sum to pi"
            )));
        }
        Ok(Self {
            taus,
            orientation: if orientation < 0.0 { -1.0 } else { 1.0 },
        })
    }

    /// Class whose side normals turn by `theta1`, `theta2`, `theta3`.
    pub fn from_normal_angles(thetas: [f64; 3], orientation: f64) -> Result<Self> {
        if thetas.iter().any(|&x| !(x > 0.0 && x < PI)) || (thetas.iter().sum::<f64>() - TAU).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "normal angles {thetas:?} must lie in (0, pi) and sum to 2pi"
            )));
        }
        let taus = thetas.map(|t| PI - t);
        let sum: f64 = taus.iter().sum();
        // absorb rounding so that the taus sum to pi
        let taus = [taus[0], taus[1], taus[2] + (PI - sum)];
        Self::new(taus, orientation)
    }

    pub fn normal_angles(&self) -> [f64; 3] {
        self.taus.map(|t| PI - t)
    }

    /// Outward normal angles of the three sides for rotation `alpha`.
    fn side_normals(&self, alpha: f64) -> [f64; 3] {
        let th = self.normal_angles();
        let o = self.orientation;
        [alpha, alpha + o * th[0], alpha + o * (th[0] + th[1])]
    }
}

/// Contact of one side with the curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Touch {
    pub param: f64,
    pub point: Vec2,
    /// Set when another, distant part of the curve also touches the side.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircumscribingTriangle {
    pub alpha: f64,
    /// Vertices `D = L_A ^ L_B`, `E = L_B ^ L_C`, `F = L_C ^ L_A`.
    pub triangle: Triangle,
    pub area: f64,
    pub touches: [Touch; 3],
    /// The area is constant in the rotation angle.
    pub continuum: bool,
}

/// Support data of a sampled curve: hull points with their curve
/// parameters.
struct Support<'a> {
    curve: &'a SampledCurve,
    hull: Vec<(f64, Vec2)>,
    step: f64,
    scale: f64,
}

impl<'a> Support<'a> {
    fn new(curve: &'a SampledCurve) -> Result<Self> {
        if curve.geometry() != GeometryKind::Euclidean {
            return Err(Error::InvalidInput(
                "circumscribing triangles need a Euclidean curve".into(),
            ));
        }
        let samples = curve.open_samples();
        let hull: Vec<(f64, Vec2)> = curve
            .hull_indices()
            .into_iter()
            .map(|i| (samples[i].param, samples[i].point))
            .collect();
        if hull.len() < 3 {
            return Err(Error::MalformedCurve("curve has an empty interior".into()));
        }
        let scale = hull.iter().map(|h| h.1.norm()).fold(0.0, f64::max).max(1e-300);
        Ok(Self {
            curve,
            hull,
            step: curve.period() / samples.len() as f64,
            scale,
        })
    }

    fn coarse(&self, u: Vec2) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, h) in self.hull.iter().enumerate() {
            let v = h.1.dot(&u);
            if v > best.1 {
                best = (i, v);
            }
        }
        best
    }

    fn value(&self, u: Vec2) -> f64 {
        self.touch(u).point.dot(&u)
    }

    /// Point of the curve maximizing `x . u`, refined on the model.
    fn touch(&self, u: Vec2) -> Touch {
        let (i, v) = self.coarse(u);
        let model = self.curve.model();
        let s0 = self.hull[i].0;
        let mut s = s0;
        for _ in 0..20 {
            let j = model.jet(s);
            let (g1, g2) = (j.d1.dot(&u), j.d2.dot(&u));
            if g2 >= 0.0 {
                break;
            }
            let ds = -g1 / g2;
            if (s + ds - s0).abs() > 3.0 * self.step {
                break;
            }
            s += ds;
            if ds.abs() < 1e-15 * self.curve.period() {
                break;
            }
        }
        let mut point = model.point(s);
        if point.dot(&u) < v {
            s = s0;
            point = self.hull[i].1;
        }
        let period = self.curve.period();
        let tol = 1e-10 * self.scale;
        let ambiguous = self.hull.iter().any(|h| {
            h.1.dot(&u) > v - tol
                && crate::numeric::circular_diff(h.0, s, period).abs() > 4.0 * self.step
        });
        Touch {
            param: wrap(s, period),
            point,
            ambiguous,
        }
    }
}

fn lines_triangle(normals: [f64; 3], support: [f64; 3]) -> Option<Triangle> {
    let g = GeometryKind::Euclidean;
    let line = |i: usize| {
        let u = unit(normals[i]);
        GeodesicLine::new(u * support[i], rot90(u))
    };
    let (l1, l2, l3) = (line(0), line(1), line(2));
    Some(Triangle {
        a: g.intersect_lines(&l1, &l2).ok()?,
        b: g.intersect_lines(&l2, &l3).ok()?,
        c: g.intersect_lines(&l3, &l1).ok()?,
    })
}

fn circumscribe(support: &Support, class: &SimilarityClass, alpha: f64) -> Option<(Triangle, [Touch; 3])> {
    let normals = class.side_normals(alpha);
    let touches = normals.map(|n| support.touch(unit(n)));
    let values = [0, 1, 2].map(|i| touches[i].point.dot(&unit(normals[i])));
    Some((lines_triangle(normals, values)?, touches))
}

fn scan_area(support: &Support, class: &SimilarityClass, alpha: f64) -> f64 {
    let normals = class.side_normals(alpha);
    let values = normals.map(|n| support.coarse(unit(n)).1);
    lines_triangle(normals, values).map_or(0.0, |t| t.area())
}

fn refined_area(support: &Support, class: &SimilarityClass, alpha: f64) -> f64 {
    let normals = class.side_normals(alpha);
    let values = normals.map(|n| support.value(unit(n)));
    lines_triangle(normals, values).map_or(0.0, |t| t.area())
}

/// Signed distance from the intersection of the first two foot normals to
/// the third one.
fn concurrency_defect(support: &Support, class: &SimilarityClass, alpha: f64) -> f64 {
    let g = GeometryKind::Euclidean;
    let normals = class.side_normals(alpha);
    let touches = normals.map(|n| support.touch(unit(n)));
    let lines = [0, 1, 2].map(|i| GeodesicLine::new(touches[i].point, unit(normals[i])));
    match g.intersect_lines(&lines[0], &lines[1]) {
        Ok(p) => g.signed_distance_to_line(&lines[2], p),
        Err(_) => f64::NAN,
    }
}

/// Maximal-area triangles of the given class circumscribing the curve.
/// Returns every maximizer of the rotation scan within a relative `1e-6` of
/// the best area.
pub fn max_circumscribing_triangle(curve: &SampledCurve, class: &SimilarityClass) -> Result<Vec<CircumscribingTriangle>> {
    let support = Support::new(curve)?;
    let step = TAU / ROTATION_SCAN as f64;
    let areas: Vec<f64> = (0..ROTATION_SCAN)
        .into_par_iter()
        .map(|i| scan_area(&support, class, step * i as f64))
        .collect();
    let max = areas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = areas.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) {
        return Err(Error::MalformedCurve("no circumscribing triangle".into()));
    }
    let build = |alpha: f64, continuum: bool| -> Option<CircumscribingTriangle> {
        let (triangle, touches) = circumscribe(&support, class, alpha)?;
        Some(CircumscribingTriangle {
            alpha: wrap(alpha, TAU),
            area: triangle.area(),
            triangle,
            touches,
            continuum,
        })
    };
    if (max - min) <= 1e-9 * max {
        return build(0.0, true)
            .map(|t| vec![t])
            .ok_or(Error::MalformedCurve("no circumscribing triangle".into()));
    }
    let n = ROTATION_SCAN;
    let peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let (l, r) = (areas[(i + n - 1) % n], areas[(i + 1) % n]);
            areas[i] >= l && areas[i] > r && areas[i] >= max * (1.0 - 1e-6)
        })
        .collect();
    let mut out: Vec<CircumscribingTriangle> = Vec::new();
    for i in peaks {
        let a0 = step * i as f64;
        let (alpha, _) = golden_max(|a| refined_area(&support, class, a), a0 - step, a0 + step, 1e-12);
        let alpha = polish(&support, class, alpha, step).unwrap_or(alpha);
        if let Some(t) = build(alpha, false) {
            if !out.iter().any(|o| o.triangle.vertex_distance(&t.triangle) < 1e-7 * support.scale) {
                out.push(t);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::MalformedCurve("rotation scan found no maximum".into()));
    }
    Ok(out)
}

/// Root of the concurrency defect near a maximizer of the area.
fn polish(support: &Support, class: &SimilarityClass, alpha: f64, step: f64) -> Option<f64> {
    let f = |a: f64| concurrency_defect(support, class, a);
    let f0 = f(alpha);
    if f0 == 0.0 {
        return Some(alpha);
    }
    for k in 1..=8 {
        let h = step * k as f64 / 8.0;
        for (lo, hi) in [(alpha - h, alpha), (alpha, alpha + h)] {
            let (flo, fhi) = (f(lo), f(hi));
            if flo.is_finite() && fhi.is_finite() && flo.signum() != fhi.signum() {
                return find_root(f, lo, hi, 1e-15).ok();
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleNormalResult {
    pub feet: [NormalFoot; 3],
    pub meeting_point: Vec2,
    pub requested_angles: [f64; 3],
    pub achieved_angles: [f64; 3],
    pub orientation: f64,
    pub circumscribing_triangle: Triangle,
    pub concurrency_residual: f64,
    pub angle_residual: f64,
    /// Vertex distance between the circumscribing triangle and the
    /// antipedal triangle of the feet with respect to the meeting point.
    pub antipedal_residual: f64,
    /// A side touches the curve at more than one place.
    pub ambiguous: bool,
    pub continuum: bool,
    pub diameter: f64,
}

impl TripleNormalResult {
    pub fn certified(&self) -> bool {
        self.concurrency_residual < 1e-7 * self.diameter && self.angle_residual < 1e-7
    }

    pub fn angle_sum(&self) -> f64 {
        self.achieved_angles.iter().sum()
    }
}

fn result_from(
    curve: &SampledCurve,
    class: &SimilarityClass,
    ct: &CircumscribingTriangle,
    diameter: f64,
) -> Result<TripleNormalResult> {
    let g = GeometryKind::Euclidean;
    let model = curve.model();
    let normals = class.side_normals(ct.alpha);
    let feet: [NormalFoot; 3] = [0, 1, 2].map(|i| {
        let mut foot = NormalFoot::on_model(model.as_ref(), ct.touches[i].param, false);
        if foot.normal.direction.dot(&unit(normals[i])) < 0.0 {
            foot.normal.direction = -foot.normal.direction;
        }
        foot
    });
    let meeting_point = g.intersect_lines(&feet[0].normal, &feet[1].normal)?;
    let dirs = directions_at(g, &feet, meeting_point)?;
    let achieved = oriented_gaps(&dirs, class.orientation);
    let requested = class.normal_angles();
    let angle_residual = achieved
        .iter()
        .zip(&requested)
        .map(|(a, r)| (a - r).abs())
        .fold(0.0, f64::max);
    let touch_triangle = Triangle {
        a: feet[0].point,
        b: feet[1].point,
        c: feet[2].point,
    };
    let antipedal_residual = antipedal_triangle(&touch_triangle, meeting_point)
        .map(|t| t.vertex_distance(&ct.triangle))
        .unwrap_or(f64::INFINITY);
    Ok(TripleNormalResult {
        feet,
        meeting_point,
        requested_angles: requested,
        achieved_angles: achieved,
        orientation: class.orientation,
        circumscribing_triangle: ct.triangle,
        concurrency_residual: concurrency_residual(g, &feet, meeting_point),
        angle_residual,
        antipedal_residual,
        ambiguous: ct.touches.iter().any(|t| t.ambiguous),
        continuum: ct.continuum,
        diameter,
    })
}

/// Three normals of `curve` meeting at one point at the angles `thetas`
/// (each in `(0, pi)`, summing to `2 pi`). Tries both orientations unless one
/// is given, and returns every certified result.
pub fn solve_triple_normal(
    curve: &SampledCurve,
    thetas: [f64; 3],
    orientation: Option<f64>,
) -> Result<Vec<TripleNormalResult>> {
    let orientations: Vec<f64> = match orientation {
        Some(o) => vec![if o < 0.0 { -1.0 } else { 1.0 }],
        None => vec![1.0, -1.0],
    };
    let diameter = curve.diameter();
    let mut out: Vec<TripleNormalResult> = Vec::new();
    for o in orientations {
        let class = SimilarityClass::from_normal_angles(thetas, o)?;
        for ct in max_circumscribing_triangle(curve, &class)? {
            let r = result_from(curve, &class, &ct, diameter)?;
            if r.certified() && !out.iter().any(|x| same_feet(x, &r, curve.period())) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

fn same_feet(a: &TripleNormalResult, b: &TripleNormalResult, period: f64) -> bool {
    (a.meeting_point - b.meeting_point).norm() < 1e-7 * a.diameter.max(1.0)
        && a.feet.iter().all(|f| {
            b.feet
                .iter()
                .any(|g| crate::numeric::circular_diff(f.param, g.param, period).abs() < 1e-7)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{FourierCurve, SupportCurve};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn equilateral() -> Triangle {
        Triangle::new(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.5, 3f64.sqrt() / 2.0),
        )
        .unwrap()
    }

    #[test]
    fn tau_center_examples() {
        let t = equilateral();
        let tc = tau_center(&t, [PI / 3.0; 3]).unwrap();
        let centroid = (t.a + t.b + t.c) / 3.0;
        assert!((tc.center - centroid).norm() < 1e-14);
        assert!(tc.circle_residual < 1e-14);

        let t = Triangle::new(Vec2::zeros(), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        let tc = tau_center(&t, [PI / 3.0; 3]).unwrap();
        let g = GeometryKind::Euclidean;
        let p = tc.center;
        for (x, y) in [(t.a, t.b), (t.b, t.c), (t.c, t.a)] {
            assert!((g.angle_between(p, x, y).unwrap() - 2.0 * PI / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn own_angles_give_the_orthocenter() {
        let t = Triangle::new(Vec2::new(0.0, 0.0), Vec2::new(4.0, 0.0), Vec2::new(1.0, 2.5)).unwrap();
        let [ang_a, ang_b, ang_c] = t.angles();
        let tc = tau_center(&t, [ang_c, ang_a, ang_b]).unwrap();
        // orthocenter: altitude from C is x = 1; altitude from A is
        // perpendicular to BC = (-3, 2.5)
        let h = Vec2::new(1.0, 3.0 / 2.5);
        assert!((tc.center - h).norm() < 1e-12);
        assert!(tc.circle_residual < 1e-12);
        assert!(!tc.degenerate);

        // right angle at A: the orthocenter is the vertex A itself and the
        // circles on AB and CA become tangent there
        let r = Triangle::new(Vec2::zeros(), Vec2::new(2.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        let [ra, rb, rc] = r.angles();
        let tc = tau_center(&r, [rc, ra, rb]).unwrap();
        assert!((tc.center - r.a).norm() < 1e-12);
    }

    #[test]
    fn tau_center_rejects_bad_angles() {
        let t = equilateral();
        assert!(tau_center(&t, [1.0, 1.0, 1.0]).is_err());
        assert!(tau_center(&t, [PI, 0.0, 0.0]).is_err());
    }

    #[test]
    fn tau_center_random_concurrency_and_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = GeometryKind::Euclidean;
        let mut inside = 0;
        for _ in 0..1000 {
            let pts: Vec<Vec2> = (0..3)
                .map(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let Ok(t) = Triangle::new(pts[0], pts[1], pts[2]) else { continue };
            if t.area() < 1e-3 {
                continue;
            }
            let x: f64 = rng.gen_range(0.05..0.9);
            let y: f64 = rng.gen_range(0.05..(0.95 - x));
            let taus = [x * PI, y * PI, PI - (x + y) * PI];
            let tc = tau_center(&t, taus).unwrap();
            let scale = tc.center.norm().max(1.0);
            assert!(tc.circle_residual < 1e-9 * scale, "{tc:?}");
            if t.contains(tc.center) {
                inside += 1;
                let p = tc.center;
                let ang = [
                    g.angle_between(p, t.a, t.b).unwrap(),
                    g.angle_between(p, t.b, t.c).unwrap(),
                    g.angle_between(p, t.c, t.a).unwrap(),
                ];
                for (a, tau) in ang.iter().zip(&taus) {
                    assert!((a - (PI - tau)).abs() < 1e-9);
                }
            }
        }
        assert!(inside > 100);
    }

    #[test]
    fn antipedal_examples() {
        let t = equilateral();
        let centroid = (t.a + t.b + t.c) / 3.0;
        let ap = antipedal_triangle(&t, centroid).unwrap();
        // tangent triangle of the circumcircle: twice the size, rotated
        for v in ap.vertices() {
            assert!(((v - centroid).norm() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        let t = Triangle::new(Vec2::zeros(), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        let p = Vec2::new(1.0, 1.0);
        let ap = antipedal_triangle(&t, p).unwrap();
        let sides = [(ap.c, ap.a, t.a), (ap.a, ap.b, t.b), (ap.b, ap.c, t.c)];
        for (x, y, v) in sides {
            assert!(cross(y - x, v - x).abs() < 1e-10);
            assert!((y - x).dot(&(v - p)).abs() < 1e-10);
        }
    }

    fn euclid(model: impl crate::curves::CurveModel + 'static) -> SampledCurve {
        SampledCurve::new(Arc::new(model), GeometryKind::Euclidean).unwrap()
    }

    #[test]
    fn circle_circumscribing_triangles() {
        let c = euclid(SupportCurve::circle(1.0));
        let class = SimilarityClass::new([PI / 3.0; 3], 1.0).unwrap();
        let t = &max_circumscribing_triangle(&c, &class).unwrap()[0];
        assert!(t.continuum);
        assert!((t.area - 3.0 * 3f64.sqrt()).abs() < 1e-9);
        let class = SimilarityClass::new([PI / 2.0, PI / 4.0, PI / 4.0], 1.0).unwrap();
        let t = &max_circumscribing_triangle(&c, &class).unwrap()[0];
        assert!(t.continuum);
        // right isosceles triangle with inradius 1: legs 2 + sqrt 2
        let leg = 2.0 + 2f64.sqrt();
        assert!((t.area - leg * leg / 2.0).abs() < 1e-9);
    }

    #[test]
    fn ellipse_maximum_matches_dense_scan() {
        let c = euclid(FourierCurve::ellipse(2.0, 1.0));
        let class = SimilarityClass::new([PI / 3.0; 3], 1.0).unwrap();
        let best = max_circumscribing_triangle(&c, &class).unwrap();
        // exact support function of the ellipse
        let h = |phi: f64| (4.0 * phi.cos().powi(2) + phi.sin().powi(2)).sqrt();
        let area = |alpha: f64| {
            let normals = class.side_normals(alpha);
            lines_triangle(normals, normals.map(h)).unwrap().area()
        };
        let dense = (0..100_000)
            .map(|i| area(TAU * i as f64 / 100_000.0))
            .fold(f64::NEG_INFINITY, f64::max);
        for t in &best {
            assert!((t.area - dense).abs() < 1e-8 * dense, "{} vs {dense}", t.area);
        }
    }

    #[test]
    fn tnit_on_circle_meets_at_center() {
        let c = euclid(SupportCurve::circle(1.0));
        let res = solve_triple_normal(&c, [2.0, 2.2, TAU - 4.2], Some(1.0)).unwrap();
        assert!(!res.is_empty());
        for r in &res {
            assert!(r.meeting_point.norm() < 1e-9);
            assert!(r.angle_residual < 1e-9);
        }
    }

    #[test]
    fn tnit_on_convex_and_immersed_curves() {
        let curves = [
            euclid(SupportCurve::from_harmonics(1.0, &[(2, 0.08, 0.02), (3, 0.03, 0.0)]).unwrap()),
            euclid(FourierCurve::ellipse(2.0, 1.0)),
            euclid(FourierCurve::limacon(1.0, 0.5)),
        ];
        for c in &curves {
            for thetas in [[TAU / 3.0; 3], [2.5, 2.0, TAU - 4.5], [1.2, 2.9, TAU - 4.1]] {
                let res = solve_triple_normal(c, thetas, None).unwrap();
                assert!(!res.is_empty(), "{thetas:?}");
                for r in &res {
                    assert!(r.certified());
                    assert!((r.angle_sum() - TAU).abs() < 1e-9);
                    assert!(r.antipedal_residual < 1e-7);
                    for f in &r.feet {
                        assert!(f.orthogonality_residual(c.model().as_ref()) < 1e-9);
                    }
                }
            }
        }
    }
}
