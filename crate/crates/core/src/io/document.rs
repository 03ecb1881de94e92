use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::spec::CurveSpec;
use crate::config::{concurrency_residual, directions_at, oriented_gaps, NormalFoot, TripodConfiguration, TRIPOD_ANGLE};
use crate::error::{Error, Result};
use crate::geometry::{GeodesicLine, GeometryKind, Vec2};
use crate::morse::{BoundaryCritical, CriticalPoint, DiameterSearch, MinorReport, MorsePolynomials};
use crate::polygon::PolygonTripod;
use crate::triple_normal::TripleNormalResult;
use crate::tripod_euclidean::IndexClass;
use crate::VERSION;

/// Recomputed residuals must reproduce the stored ones this closely.
pub const RECERTIFY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordSource {
    SupportFunction,
    TripleNormal,
    InteriorCritical,
    Polygon,
}

/// Three oriented normal geodesics and their meeting point, with the
/// residuals and the bounds they were certified against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationRecord {
    pub source: RecordSource,
    pub feet: [NormalFoot; 3],
    pub point: Vec2,
    pub requested_angles: [f64; 3],
    pub orientation: f64,
    pub achieved_angles: [f64; 3],
    pub concurrency_residual: f64,
    pub angle_residual: f64,
    pub concurrency_bound: f64,
    pub angle_bound: f64,
    pub certified: bool,
    #[serde(default)]
    pub degenerate: bool,
    #[serde(default)]
    pub ambiguous: bool,
    #[serde(default)]
    pub morse_index: Option<usize>,
    #[serde(default)]
    pub triangle: Option<[Vec2; 3]>,
}

/// Angles at `point` between consecutive oriented normals and the two
/// residuals, computed from raw coordinates only.
pub fn measure(
    g: GeometryKind,
    feet: &[NormalFoot; 3],
    point: Vec2,
    requested: &[f64; 3],
    orientation: f64,
) -> Result<([f64; 3], f64, f64)> {
    let dirs = directions_at(g, feet, point)?;
    let achieved = oriented_gaps(&dirs, orientation);
    let angle = achieved
        .iter()
        .zip(requested)
        .map(|(a, r)| (a - r).abs())
        .fold(0.0, f64::max);
    Ok((achieved, concurrency_residual(g, feet, point), angle))
}

impl ConfigurationRecord {
    #[allow(clippy::too_many_arguments)]
    fn build(
        g: GeometryKind,
        source: RecordSource,
        feet: [NormalFoot; 3],
        point: Vec2,
        requested: [f64; 3],
        orientation: f64,
        concurrency_bound: f64,
        angle_bound: f64,
    ) -> Result<Self> {
        let (achieved, conc, angle) = measure(g, &feet, point, &requested, orientation)?;
        Ok(Self {
            source,
            feet,
            point,
            requested_angles: requested,
            orientation,
            achieved_angles: achieved,
            concurrency_residual: conc,
            angle_residual: angle,
            concurrency_bound,
            angle_bound,
            certified: conc < concurrency_bound && angle < angle_bound,
            degenerate: false,
            ambiguous: false,
            morse_index: None,
            triangle: None,
        })
    }

    /// A tripod configuration certified at `1e-7 diameter` and `1e-8`.
    pub fn from_tripod(c: &TripodConfiguration, source: RecordSource, diameter: f64) -> Result<Self> {
        let mut r = Self::build(
            c.geometry,
            source,
            c.feet,
            c.tripod_point,
            [TRIPOD_ANGLE; 3],
            1.0,
            1e-7 * diameter,
            1e-8,
        )?;
        r.degenerate = c.degenerate;
        Ok(r)
    }

    pub fn from_triple_normal(t: &TripleNormalResult) -> Result<Self> {
        let mut r = Self::build(
            GeometryKind::Euclidean,
            RecordSource::TripleNormal,
            t.feet,
            t.meeting_point,
            t.requested_angles,
            t.orientation,
            1e-7 * t.diameter,
            1e-7,
        )?;
        r.ambiguous = t.ambiguous;
        r.triangle = Some(t.circumscribing_triangle.vertices());
        Ok(r)
    }

    /// Interior critical point with its tripod configuration on the base
    /// curve. Newton stops at a gradient of about `1e-9`, so the angle bound
    /// is `1e-7`.
    pub fn from_critical(c: &TripodConfiguration, cp: &CriticalPoint, diameter: f64) -> Result<Self> {
        let mut r = Self::build(
            c.geometry,
            RecordSource::InteriorCritical,
            c.feet,
            c.tripod_point,
            [TRIPOD_ANGLE; 3],
            1.0,
            1e-7 * diameter,
            1e-7,
        )?;
        r.degenerate = cp.degenerate;
        r.morse_index = Some(cp.morse_index);
        Ok(r)
    }

    /// The lines from three polygon vertices through their Fermat point.
    pub fn from_polygon(vertices: &[Vec2], t: &PolygonTripod, diameter: f64) -> Result<Self> {
        let g = GeometryKind::Euclidean;
        let feet = t.indices.map(|i| {
            let point = vertices[i];
            NormalFoot {
                param: i as f64,
                point,
                normal: GeodesicLine::new(point, point - t.fermat_point),
            }
        });
        let c = TripodConfiguration::certify(g, feet, t.fermat_point, None)?;
        Self::from_tripod(&c, RecordSource::Polygon, diameter)
    }

    /// Largest difference between the stored and recomputed residuals.
    pub fn recertify(&self, g: GeometryKind) -> Result<f64> {
        let (achieved, conc, angle) = measure(g, &self.feet, self.point, &self.requested_angles, self.orientation)?;
        let mut dev = (conc - self.concurrency_residual)
            .abs()
            .max((angle - self.angle_residual).abs());
        for (a, b) in achieved.iter().zip(&self.achieved_angles) {
            dev = dev.max((a - b).abs());
        }
        let certified = conc < self.concurrency_bound && angle < self.angle_bound;
        if certified != self.certified {
            dev = f64::INFINITY;
        }
        Ok(dev)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub lower_bound: usize,
    pub found: usize,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub n: usize,
    pub classes: usize,
    pub bound: usize,
    pub orbits: Vec<IndexClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSummary {
    pub n: usize,
    pub count: usize,
    pub expected: usize,
}

/// Everything a command reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default)]
    pub input: Option<CurveSpec>,
    #[serde(default)]
    pub geometry: Option<GeometryKind>,
    /// Chart coordinates around the curve, for rendering.
    #[serde(default)]
    pub curve: Vec<Vec2>,
    #[serde(default)]
    pub continuum: bool,
    #[serde(default)]
    pub configurations: Vec<ConfigurationRecord>,
    #[serde(default)]
    pub counts: BTreeMap<String, usize>,
    #[serde(default)]
    pub bound: Option<BoundComparison>,
    #[serde(default)]
    pub classes: Option<ClassSummary>,
    #[serde(default)]
    pub polygon: Option<PolygonSummary>,
    #[serde(default)]
    pub diameters: Option<DiameterSearch>,
    #[serde(default)]
    pub boundary: Vec<BoundaryCritical>,
    #[serde(default)]
    pub morse: Option<MorsePolynomials>,
    #[serde(default)]
    pub closeness_score: Option<f64>,
    #[serde(default)]
    pub minors: Vec<MinorReport>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Recertification {
    pub records: usize,
    pub max_deviation: f64,
    pub ok: bool,
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        Self {
            tool: "tripod".into(),
            version: VERSION.into(),
            command: command.into(),
            input: None,
            geometry: None,
            curve: Vec::new(),
            continuum: false,
            configurations: Vec::new(),
            counts: BTreeMap::new(),
            bound: None,
            classes: None,
            polygon: None,
            diameters: None,
            boundary: Vec::new(),
            morse: None,
            closeness_score: None,
            minors: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Every reported configuration meets its bounds, every minor check
    /// passed and every boundary point matched its table entry.
    pub fn certified(&self) -> bool {
        self.configurations.iter().all(|c| c.certified)
            && self.minors.iter().all(|m| m.passed)
            && self.boundary.iter().all(|b| b.matches_table)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("result document: {e}")))
    }

    /// Recomputes every record's residuals from its coordinates.
    pub fn recertify(&self) -> Result<Recertification> {
        let g = self.geometry.unwrap_or(GeometryKind::Euclidean);
        let mut max_deviation: f64 = 0.0;
        for r in &self.configurations {
            max_deviation = max_deviation.max(r.recertify(g)?);
        }
        Ok(Recertification {
            records: self.configurations.len(),
            max_deviation,
            ok: max_deviation <= RECERTIFY_TOL,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::unit;

    fn record() -> ConfigurationRecord {
        let feet = [0.1, 0.1 + TRIPOD_ANGLE, 0.1 + 2.0 * TRIPOD_ANGLE].map(|a| {
            let p = unit(a) * 0.4;
            NormalFoot {
                param: a,
                point: p,
                normal: GeodesicLine::new(p, unit(a)),
            }
        });
        let c = TripodConfiguration::certify(GeometryKind::HyperbolicDisk, feet, Vec2::zeros(), None).unwrap();
        ConfigurationRecord::from_tripod(&c, RecordSource::InteriorCritical, 0.8).unwrap()
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let mut doc = ResultDocument::new("find-tripods");
        doc.geometry = Some(GeometryKind::HyperbolicDisk);
        doc.configurations.push(record());
        doc.curve = (0..7).map(|i| unit(i as f64) * (1.0 / 3.0)).collect();
        doc.counts.insert("configurations".into(), 1);
        doc.closeness_score = Some(0.1 + 0.2);
        let text = doc.to_json().unwrap();
        let back = ResultDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json().unwrap(), text);
        let re = back.recertify().unwrap();
        assert!(re.ok && re.records == 1);
    }

    #[test]
    fn tampered_point_fails_recertification() {
        let mut doc = ResultDocument::new("find-tripods");
        doc.geometry = Some(GeometryKind::HyperbolicDisk);
        let mut r = record();
        r.point += Vec2::new(1e-6, 0.0);
        doc.configurations.push(r);
        assert!(!doc.recertify().unwrap().ok);
    }
}
