use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{hessian, morse_index, symmetric_eigenvalues};

use super::{CriticalKind, CriticalPoint, Diameter, TripodSpace, DEGENERATE_EIGENVALUE};

/// Boundary configuration at a diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCase {
    /// All three feet at the far end, `p` at the near end.
    One,
    /// One foot next to `p`, two at the far end.
    Two,
}

/// Which end of the diameter carries `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCritical {
    pub point: CriticalPoint,
    pub case: BoundaryCase,
    pub side: Side,
    pub orientation_sign: i32,
    pub expected_index: Option<usize>,
    pub matches_table: bool,
}

/// Index of the boundary-restricted Hessian predicted by the diameter's
/// orientation.
pub fn expected_boundary_index(case: BoundaryCase, orientation_sign: i32) -> Option<usize> {
    match (case, orientation_sign.signum()) {
        (_, 0) => None,
        (BoundaryCase::One, s) => Some(if s > 0 { 4 } else { 3 }),
        (BoundaryCase::Two, s) => Some(if s > 0 { 3 } else { 2 }),
    }
}

/// Builds the boundary configuration of `case` at `diameter`, with `p` at
/// the end `side`, and classifies it through the Hessian of the functional
/// restricted to `gamma_eps^3 x gamma`.
pub fn classify_boundary_critical(
    space: &TripodSpace,
    diameter: &Diameter,
    case: BoundaryCase,
    side: Side,
) -> Result<BoundaryCritical> {
    let (near, far) = match side {
        Side::A => (diameter.param_a, diameter.param_b),
        Side::B => (diameter.param_b, diameter.param_a),
    };
    let (x, orbit_size) = match case {
        BoundaryCase::One => ([far, far, far, near], 1),
        BoundaryCase::Two => ([near, far, far, near], 3),
    };
    let grad = space.boundary_gradient_raw(&x)?;
    let gradient_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    let (gp, outward) = space.boundary_normal_data(&x)?;
    let normal_part = gp.dot(&outward);
    if gradient_norm > 1e-7 * gp.norm().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "boundary configuration is not critical (gradient {gradient_norm:.3e})"
        )));
    }
    let f = |y: &DVector<f64>| space.boundary_value_raw(y.as_slice());
    let h = hessian(&f, &DVector::from_row_slice(&x), 1e-4);
    let ev = symmetric_eigenvalues(&h);
    let (index, degenerate) = morse_index(&ev, DEGENERATE_EIGENVALUE);
    let p = space.base.point(near);
    let expected_index = expected_boundary_index(case, diameter.orientation_sign);
    let kind = if normal_part > 0.0 {
        CriticalKind::TypeD
    } else {
        CriticalKind::TypeN
    };
    Ok(BoundaryCritical {
        point: CriticalPoint {
            location: space.point(x[0], x[1], x[2], p),
            kind,
            morse_index: index,
            gradient_norm,
            hessian_eigenvalues: ev,
            degenerate,
            orbit_size,
        },
        case,
        side,
        orientation_sign: diameter.orientation_sign,
        expected_index,
        matches_table: !degenerate && kind == CriticalKind::TypeD && expected_index == Some(index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{RadialChart, RadialCurve, SampledCurve};
    use crate::geometry::GeometryKind;
    use crate::morse::find_diameters;
    use std::sync::Arc;

    fn check_table(g: GeometryKind, chart: RadialChart, r: f64, hs: &[(usize, f64, f64)]) {
        let mut m = RadialCurve::circle(chart, r);
        for &(k, a, ph) in hs {
            m = m.with_harmonic(k, a, ph);
        }
        let c = SampledCurve::new(Arc::new(m), g).unwrap();
        let space = TripodSpace::new(&c, None).unwrap();
        let ds = find_diameters(&c).unwrap();
        assert!(!ds.diameters.is_empty());
        for d in &ds.diameters {
            for case in [BoundaryCase::One, BoundaryCase::Two] {
                for side in [Side::A, Side::B] {
                    let b = classify_boundary_critical(&space, d, case, side).unwrap();
                    assert!(b.matches_table, "{g:?} {hs:?}: {b:?}");
                }
            }
        }
    }

    #[test]
    fn index_table_euclidean() {
        check_table(GeometryKind::Euclidean, RadialChart::Plane, 1.0, &[(2, 0.03, 0.0)]);
        check_table(GeometryKind::Euclidean, RadialChart::Plane, 1.0, &[(3, 0.02, 0.0), (2, 0.01, 0.5)]);
    }

    #[test]
    fn index_table_hyperbolic() {
        check_table(GeometryKind::HyperbolicDisk, RadialChart::Disk, 0.5, &[(2, 0.02, 0.0)]);
        check_table(GeometryKind::HyperbolicDisk, RadialChart::Disk, 0.3, &[(3, 0.01, 0.0), (2, 0.005, 1.0)]);
    }

    #[test]
    fn index_table_spherical() {
        check_table(GeometryKind::Spherical, RadialChart::Sphere, 0.5, &[(3, 0.02, 0.0)]);
        check_table(GeometryKind::Spherical, RadialChart::Sphere, 0.8, &[(2, 0.02, 0.3), (3, 0.01, 0.0)]);
    }
}
