//! Tripod configurations of near-circular curves in any of the three
//! geometries, as critical points of the distance-sum functional on
//! `gamma_eps^3 x R`, together with the boundary analysis at diameters and
//! the polynomial bookkeeping that forces interior critical points.

mod analysis;
mod bookkeeping;
mod boundary;
mod diameters;
mod functional;
mod interior;
mod minors;

use serde::{Deserialize, Serialize};

use crate::geometry::{GeometryKind, Vec2};

pub use analysis::{analyze, MorseAnalysis};
pub use bookkeeping::{bookkeeping_from_table, morse_bookkeeping, poly_divide_one_plus_t, MorsePolynomials};
pub use boundary::{classify_boundary_critical, expected_boundary_index, BoundaryCase, BoundaryCritical, Side};
pub use diameters::{find_diameters, Diameter, DiameterSearch, DIAMETER_GRID};
pub use functional::{default_epsilon, TripodSpace};
pub use interior::{find_interior_critical_points, InteriorSearch, SearchOptions};
pub use minors::{hyperbolic_minor_checks, M4Check, MinorCase, MinorCheck, MinorReport};

/// Eigenvalues closer to zero than this mark a degenerate critical point.
pub const DEGENERATE_EIGENVALUE: f64 = 1e-7;

/// A point `(t, u, v, p)` of the configuration space: three parameters on
/// the outward parallel curve at distance `epsilon` and a point of the
/// closed region bounded by the curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigSpacePoint {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub p: Vec2,
    pub geometry: GeometryKind,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Interior,
    TypeD,
    TypeN,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: ConfigSpacePoint,
    pub kind: CriticalKind,
    pub morse_index: usize,
    pub gradient_norm: f64,
    /// Five values for interior points, four for boundary-restricted ones.
    pub hessian_eigenvalues: Vec<f64>,
    pub degenerate: bool,
    /// Number of critical points obtained from this one by permuting the
    /// feet.
    pub orbit_size: usize,
}
