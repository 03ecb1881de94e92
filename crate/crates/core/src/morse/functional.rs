use std::sync::Arc;

use crate::curves::{CurveModel, OffsetCurve, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::{rot90, GeometryKind, Vec2};

use super::ConfigSpacePoint;

/// Default offset: a twentieth of the smallest radius of curvature.
pub fn default_epsilon(curve: &SampledCurve) -> Result<f64> {
    let r = curve.min_radius_of_curvature().ok_or_else(|| {
        Error::MalformedCurve("curve has points without a center of curvature".into())
    })?;
    Ok(0.05 * r)
}

/// The tripod functional of a counterclockwise closed curve.
#[derive(Debug, Clone)]
pub struct TripodSpace {
    pub geometry: GeometryKind,
    pub epsilon: f64,
    pub base: Arc<dyn CurveModel>,
    pub offset: OffsetCurve,
}

impl TripodSpace {
    pub fn new(curve: &SampledCurve, epsilon: Option<f64>) -> Result<Self> {
        if curve.rotation_index()? != 1 {
            return Err(Error::MalformedCurve(
                "the configuration space needs a simple counterclockwise curve".into(),
            ));
        }
        let epsilon = match epsilon {
            Some(e) => e,
            None => default_epsilon(curve)?,
        };
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
        }
        let g = curve.geometry();
        let eq = curve.equidistant(epsilon)?;
        if !eq.regular {
            return Err(Error::InvalidInput(format!(
                "parallel curve at distance {epsilon} is singular"
            )));
        }
        for s in eq.curve.open_samples() {
            g.check(s.point)?;
        }
        Ok(Self {
            geometry: g,
            epsilon,
            base: curve.model().clone(),
            offset: OffsetCurve::new(curve.model().clone(), g, epsilon),
        })
    }

    pub fn period(&self) -> f64 {
        self.base.period()
    }

    pub fn point(&self, t: f64, u: f64, v: f64, p: Vec2) -> ConfigSpacePoint {
        ConfigSpacePoint {
            t,
            u,
            v,
            p,
            geometry: self.geometry,
            epsilon: self.epsilon,
        }
    }

    /// Point on the parallel curve.
    pub fn foot(&self, s: f64) -> Vec2 {
        self.offset.point(s)
    }

    /// `rho(t, p) + rho(u, p) + rho(v, p)`.
    pub fn value(&self, x: &ConfigSpacePoint) -> Result<f64> {
        let g = self.geometry;
        g.check(x.p)?;
        [x.t, x.u, x.v]
            .iter()
            .map(|&s| g.distance(self.foot(s), x.p))
            .sum()
    }

    /// Gradient in `(t, u, v, p.x, p.y)`, chart coordinates for `p`.
    pub fn gradient(&self, x: &ConfigSpacePoint) -> Result<[f64; 5]> {
        self.gradient_raw(&[x.t, x.u, x.v, x.p.x, x.p.y])
    }

    pub(crate) fn value_raw(&self, x: &[f64]) -> f64 {
        let g = self.geometry;
        let p = Vec2::new(x[3], x[4]);
        x[..3]
            .iter()
            .map(|&s| g.distance_unchecked(self.foot(s), p))
            .sum()
    }

    /// Analytic gradient in `(t, u, v, p.x, p.y)`.
    pub(crate) fn gradient_raw(&self, x: &[f64]) -> Result<[f64; 5]> {
        let g = self.geometry;
        let p = Vec2::new(x[3], x[4]);
        if !g.contains(p) {
            return Err(Error::domain(g.name(), p));
        }
        let mut out = [0.0; 5];
        let mut gp = Vec2::zeros();
        for i in 0..3 {
            let (pos, vel) = self.offset.position_velocity(x[i]);
            out[i] = g.distance_gradient(pos, p)?.dot(&vel);
            gp += g.distance_gradient(p, pos)?;
        }
        out[3] = gp.x;
        out[4] = gp.y;
        Ok(out)
    }

    /// Functional restricted to the boundary `p = gamma(s)`.
    pub(crate) fn boundary_value_raw(&self, x: &[f64]) -> f64 {
        let p = self.base.point(x[3]);
        self.value_raw(&[x[0], x[1], x[2], p.x, p.y])
    }

    /// Gradient of the boundary restriction in `(t, u, v, s)`.
    pub(crate) fn boundary_gradient_raw(&self, x: &[f64]) -> Result<[f64; 4]> {
        let jet = self.base.jet(x[3]);
        let full = self.gradient_raw(&[x[0], x[1], x[2], jet.pos.x, jet.pos.y])?;
        Ok([full[0], full[1], full[2], Vec2::new(full[3], full[4]).dot(&jet.d1)])
    }

    /// Chart gradient of `p -> f` at `p = gamma(s)` and the outward normal
    /// there.
    pub(crate) fn boundary_normal_data(&self, x: &[f64]) -> Result<(Vec2, Vec2)> {
        let jet = self.base.jet(x[3]);
        let full = self.gradient_raw(&[x[0], x[1], x[2], jet.pos.x, jet.pos.y])?;
        let outward = -rot90(jet.d1.normalize());
        Ok((Vec2::new(full[3], full[4]), outward))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{RadialChart, RadialCurve, SupportCurve};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circle_values() {
        let c = SampledCurve::new(Arc::new(SupportCurve::circle(1.0)), GeometryKind::Euclidean).unwrap();
        let sp = TripodSpace::new(&c, Some(0.1)).unwrap();
        let x = sp.point(0.0, 0.0, 0.0, Vec2::zeros());
        assert!((sp.value(&x).unwrap() - 3.3).abs() < 1e-12);
        let x = sp.point(0.4, 0.4, 0.4, Vec2::new(0.2, -0.1));
        let single = GeometryKind::Euclidean.distance(sp.foot(0.4), x.p).unwrap();
        assert!((sp.value(&x).unwrap() - 3.0 * single).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_circle_value() {
        let g = GeometryKind::HyperbolicDisk;
        let c = SampledCurve::new(Arc::new(RadialCurve::circle(RadialChart::Disk, 0.5)), g).unwrap();
        let sp = TripodSpace::new(&c, Some(0.05)).unwrap();
        let x = sp.point(0.0, 2.0, 4.0, Vec2::zeros());
        // rho = arccosh(1 + 2 r^2 / (1 - r^2)) for the chart radius r = 0.5
        let rho = (1.0 + 2.0 * 0.25 / 0.75f64).acosh();
        assert!((sp.value(&x).unwrap() - 3.0 * (rho + 0.05)).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let curves = [
            (GeometryKind::Euclidean, RadialChart::Plane, 1.0),
            (GeometryKind::HyperbolicDisk, RadialChart::Disk, 0.5),
            (GeometryKind::Spherical, RadialChart::Sphere, 0.6),
        ];
        for (g, chart, r) in curves {
            let model = RadialCurve::circle(chart, r).with_harmonic(3, 0.02 * r, 0.3);
            let c = SampledCurve::new(Arc::new(model), g).unwrap();
            let sp = TripodSpace::new(&c, None).unwrap();
            for _ in 0..1000 {
                let p = c.centroid() + Vec2::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)) * r;
                let x = [rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3), p.x, p.y];
                let an = sp.gradient_raw(&x).unwrap();
                let fd = crate::numeric::gradient(&|y: &nalgebra::DVector<f64>| sp.value_raw(y.as_slice()), &nalgebra::DVector::from_row_slice(&x), 1e-6);
                let scale = an.iter().map(|a| a.abs()).fold(1.0, f64::max);
                for i in 0..5 {
                    assert!((an[i] - fd[i]).abs() < 1e-6 * scale, "{g:?} {i}: {} vs {}", an[i], fd[i]);
                }
            }
        }
    }
}
