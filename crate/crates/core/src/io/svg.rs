use std::fmt::Write;

use super::document::ResultDocument;
use crate::geometry::{GeometryKind, Vec2};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 0.08;
const GEODESIC_SAMPLES: usize = 64;

/// Chart point to the drawing plane: identity, except on the sphere which
/// is projected orthographically along the pole.
fn project(g: GeometryKind, p: Vec2) -> Vec2 {
    match g {
        GeometryKind::Spherical => {
            let x = GeometryKind::to_sphere(p);
            Vec2::new(x.x, x.y)
        }
        _ => p,
    }
}

struct Frame {
    center: Vec2,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Vec2]) -> Self {
        let (mut lo, mut hi) = (Vec2::repeat(f64::INFINITY), Vec2::repeat(f64::NEG_INFINITY));
        for p in points.iter().filter(|p| p.x.is_finite() && p.y.is_finite()) {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        if lo.x > hi.x {
            return Self {
                center: Vec2::zeros(),
                scale: SIZE / 2.0,
            };
        }
        let span = (hi - lo).max().max(1e-9);
        Self {
            center: (lo + hi) / 2.0,
            scale: SIZE * (1.0 - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        let q = (p - self.center) * self.scale;
        (SIZE / 2.0 + q.x, SIZE / 2.0 - q.y)
    }
}

fn path(frame: &Frame, pts: &[Vec2], close: bool) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// Geodesic through `p` and `foot`, from slightly behind `p` to the foot.
fn normal_segment(g: GeometryKind, p: Vec2, foot: Vec2) -> Option<Vec<Vec2>> {
    let len = g.distance(p, foot).ok()?;
    let dir = g.unit_direction(p, foot).ok()?;
    let start = -0.2 * len;
    Some(
        (0..=GEODESIC_SAMPLES)
            .map(|i| g.exp(p, dir, start + (len - start) * i as f64 / GEODESIC_SAMPLES as f64))
            .collect(),
    )
}

/// SVG 1.1 drawing of the curve, the normals through each reported point,
/// the points themselves and any circumscribing triangles.
pub fn render_svg(doc: &ResultDocument) -> String {
    let g = doc.geometry.unwrap_or(GeometryKind::Euclidean);
    let curve: Vec<Vec2> = doc.curve.iter().map(|p| project(g, *p)).collect();
    let normals: Vec<Vec<Vec2>> = doc
        .configurations
        .iter()
        .flat_map(|c| c.feet.iter().filter_map(move |f| normal_segment(g, c.point, f.point)))
        .map(|seg| seg.into_iter().map(|p| project(g, p)).collect())
        .collect();
    let triangles: Vec<Vec<Vec2>> = doc
        .configurations
        .iter()
        .filter_map(|c| c.triangle)
        .map(|t| t.to_vec())
        .collect();
    let frame = match g {
        GeometryKind::Euclidean => {
            let mut all = curve.clone();
            all.extend(triangles.iter().flatten());
            all.extend(doc.configurations.iter().map(|c| c.point));
            Frame::fit(&all)
        }
        _ => Frame::fit(&[Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)]),
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if g != GeometryKind::Euclidean {
        let (cx, cy) = frame.map(Vec2::zeros());
        let _ = writeln!(
            s,
            r#"<circle id="boundary" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="gray" stroke-dasharray="6 4"/>"#,
            frame.scale
        );
    }
    let _ = writeln!(s, r##"<g id="triangles" fill="none" stroke="#2a7" stroke-width="1.5">"##);
    for t in &triangles {
        let _ = writeln!(s, r#"<path d="{}"/>"#, path(&frame, t, true));
    }
    let _ = writeln!(s, "</g>");
    if !curve.is_empty() {
        let _ = writeln!(
            s,
            r#"<path id="curve" d="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            path(&frame, &curve, true)
        );
    }
    let _ = writeln!(s, r##"<g id="normals" fill="none" stroke="#c33" stroke-width="1">"##);
    for n in &normals {
        let _ = writeln!(s, r#"<path d="{}"/>"#, path(&frame, n, false));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="points" fill="#c33">"##);
    for c in &doc.configurations {
        let (x, y) = frame.map(project(g, c.point));
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
