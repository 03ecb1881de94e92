use thiserror::Error;

use crate::geometry::Vec2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({x}, {y}) lies outside the {geometry} domain")]
    DomainViolation { geometry: &'static str, x: f64, y: f64 },

    #[error("coincident points: direction is undefined")]
    CoincidentPoints,

    #[error("geodesic lines do not intersect inside the domain")]
    NoIntersection,

    #[error("geodesic lines are nearly parallel (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("support function is not locally convex at alpha = {alpha} (q + q'' = {radius})")]
    ConvexityViolation { alpha: f64, radius: f64 },

    #[error("curvature vanishes at parameter {0}")]
    Inflection(f64),

    #[error("curvature {curvature} at parameter {param} has no center of curvature in this geometry")]
    NoCurvatureCenter { param: f64, curvature: f64 },

    #[error("malformed curve: {0}")]
    MalformedCurve(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("root bracket [{lo}, {hi}] failed to converge")]
    NonConvergence { lo: f64, hi: f64 },

    #[error("Fermat point of triangle coincides with a vertex (angle {angle} >= 2pi/3)")]
    VertexFermat { angle: f64 },

    #[error("degenerate triangle")]
    DegenerateTriangle,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(geometry: &'static str, p: Vec2) -> Self {
        Error::DomainViolation {
            geometry,
            x: p.x,
            y: p.y,
        }
    }
}
