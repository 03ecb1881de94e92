use serde::{Deserialize, Serialize};

use super::{
    classify_boundary_critical, find_diameters, find_interior_critical_points, morse_bookkeeping, BoundaryCase,
    BoundaryCritical, DiameterSearch, InteriorSearch, MorsePolynomials, SearchOptions, Side, TripodSpace,
};
use crate::curves::SampledCurve;
use crate::error::Result;

/// Interior search, diameters, boundary classification and the polynomial
/// identity for one curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorseAnalysis {
    pub interior: InteriorSearch,
    pub diameters: DiameterSearch,
    pub boundary: Vec<BoundaryCritical>,
    pub polynomials: MorsePolynomials,
    pub diagnostics: Vec<String>,
}

impl MorseAnalysis {
    pub fn continuum(&self) -> bool {
        self.interior.continuum || self.diameters.continuum
    }
}

pub fn analyze(curve: &SampledCurve, options: &SearchOptions) -> Result<MorseAnalysis> {
    let interior = find_interior_critical_points(curve, options)?;
    let diameters = find_diameters(curve)?;
    let space = TripodSpace::new(curve, Some(interior.epsilon))?;
    let mut boundary = Vec::new();
    let mut diagnostics = Vec::new();
    if !diameters.continuum {
        for d in &diameters.diameters {
            for case in [BoundaryCase::One, BoundaryCase::Two] {
                for side in [Side::A, Side::B] {
                    match classify_boundary_critical(&space, d, case, side) {
                        Ok(b) => boundary.push(b),
                        Err(e) => diagnostics.push(format!(
                            "diameter ({:.6}, {:.6}) {case:?} {side:?}: {e}",
                            d.param_a, d.param_b
                        )),
                    }
                }
            }
        }
    }
    let continuum = interior.continuum || diameters.continuum;
    let points: Vec<_> = boundary.iter().map(|b| b.point.clone()).collect();
    let polynomials = morse_bookkeeping(&interior.critical_points, &points, continuum);
    Ok(MorseAnalysis {
        interior,
        diameters,
        boundary,
        polynomials,
        diagnostics,
    })
}
