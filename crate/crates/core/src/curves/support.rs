use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{CurveModel, Jet};
use crate::error::{Error, Result};
use crate::geometry::{rot90, unit, Vec2};

/// Locally convex Euclidean curve with rotation index `n`, given by its
/// support function
///
/// `q(alpha) = a0 + sum_k a_k cos(k alpha / n) + b_k sin(k alpha / n)`,
/// `alpha in [0, 2 pi n)`.
///
/// The curve point with outward normal `nu(alpha) = (cos alpha, sin alpha)` is
/// `gamma = q nu + q' nu_perp`. The parameter `alpha` is the normal angle, so
/// the curve is traversed counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportCurve {
    pub rotation_index: usize,
    pub a0: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl SupportCurve {
    /// Builds the curve and checks local convexity on a `4096 n` grid.
    pub fn new(rotation_index: usize, a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if rotation_index == 0 {
            return Err(Error::InvalidInput("rotation index must be positive".into()));
        }
        if !a0.is_finite() || cos.iter().chain(&sin).any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite Fourier coefficient".into()));
        }
        let sc = Self {
            rotation_index,
            a0,
            cos,
            sin,
        };
        sc.validate()?;
        Ok(sc)
    }

    /// `q = a0 + sum_m amp_m cos(m alpha)` in integer frequencies of `alpha`
    /// (rotation index 1).
    pub fn from_harmonics(a0: f64, terms: &[(usize, f64, f64)]) -> Result<Self> {
        let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut cos = vec![0.0; top];
        let mut sin = vec![0.0; top];
        for &(k, a, b) in terms {
            if k == 0 {
                return Err(Error::InvalidInput("harmonic 0 belongs in a0".into()));
            }
            cos[k - 1] += a;
            sin[k - 1] += b;
        }
        Self::new(1, a0, cos, sin)
    }

    pub fn circle(radius: f64) -> Self {
        Self {
            rotation_index: 1,
            a0: radius,
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    fn scale(&self) -> f64 {
        1.0 / self.rotation_index as f64
    }

    /// `[q, q', q'', q''']` at `alpha`.
    pub fn derivatives(&self, alpha: f64) -> [f64; 4] {
        let mut out = [self.a0, 0.0, 0.0, 0.0];
        let scale = self.scale();
        let terms = self.cos.len().max(self.sin.len());
        for k in 1..=terms {
            let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
            let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let w = k as f64 * scale;
            let (s, c) = (w * alpha).sin_cos();
            let v = a * c + b * s;
            let dv = w * (b * c - a * s);
            out[0] += v;
            out[1] += dv;
            out[2] -= w * w * v;
            out[3] -= w * w * dv;
        }
        out
    }

    pub fn q(&self, alpha: f64) -> f64 {
        self.derivatives(alpha)[0]
    }

    /// `p = q'`, the signed distance from the origin to the normal line at
    /// `alpha`.
    pub fn p(&self, alpha: f64) -> f64 {
        self.derivatives(alpha)[1]
    }

    /// Radius of curvature `q + q''`.
    pub fn radius_of_curvature(&self, alpha: f64) -> f64 {
        let d = self.derivatives(alpha);
        d[0] + d[2]
    }

    pub fn period(&self) -> f64 {
        TAU * self.rotation_index as f64
    }

    pub fn point_at(&self, alpha: f64) -> Vec2 {
        let d = self.derivatives(alpha);
        let nu = unit(alpha);
        nu * d[0] + rot90(nu) * d[1]
    }

    pub fn normal_at(&self, alpha: f64) -> Vec2 {
        unit(alpha)
    }

    /// Smallest radius of curvature on a `4096 n` grid, with its location.
    pub fn min_radius_of_curvature(&self) -> (f64, f64) {
        let m = 4096 * self.rotation_index;
        (0..m)
            .map(|i| {
                let a = self.period() * i as f64 / m as f64;
                (a, self.radius_of_curvature(a))
            })
            .fold((0.0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }

    pub fn validate(&self) -> Result<()> {
        let (alpha, radius) = self.min_radius_of_curvature();
        if radius > 0.0 {
            Ok(())
        } else {
            Err(Error::ConvexityViolation { alpha, radius })
        }
    }

    /// Support function of the parallel curve at distance `r`.
    pub fn offset(&self, r: f64) -> Self {
        Self {
            a0: self.a0 + r,
            ..self.clone()
        }
    }

    /// The same curve moved by `shift`.
    pub fn translated(&self, shift: Vec2) -> Self {
        // q gains shift . nu(alpha) = shift.x cos(alpha) + shift.y sin(alpha),
        // which is harmonic k = n.
        let n = self.rotation_index;
        let mut out = self.clone();
        if out.cos.len() < n {
            out.cos.resize(n, 0.0);
        }
        if out.sin.len() < n {
            out.sin.resize(n, 0.0);
        }
        out.cos[n - 1] += shift.x;
        out.sin[n - 1] += shift.y;
        out
    }

    /// Centroid of the enclosed region (rotation index 1).
    pub fn area_centroid(&self) -> Vec2 {
        let m = 8192;
        let pts: Vec<Vec2> = (0..m)
            .map(|i| self.point_at(self.period() * i as f64 / m as f64))
            .collect();
        polygon_centroid(&pts)
    }

    /// Moves the area centroid to the origin. Only meaningful for simple
    /// convex curves (rotation index 1); other curves are returned as is.
    pub fn centered(&self) -> Self {
        if self.rotation_index != 1 {
            return self.clone();
        }
        self.translated(-self.area_centroid())
    }
}

impl CurveModel for SupportCurve {
    fn period(&self) -> f64 {
        SupportCurve::period(self)
    }

    fn jet(&self, alpha: f64) -> Jet {
        let [q, q1, q2, q3] = self.derivatives(alpha);
        let nu = unit(alpha);
        let nu_perp = rot90(nu);
        Jet {
            pos: nu * q + nu_perp * q1,
            d1: nu_perp * (q + q2),
            d2: nu_perp * (q1 + q3) - nu * (q + q2),
        }
    }
}

pub(crate) fn polygon_centroid(pts: &[Vec2]) -> Vec2 {
    let mut area = 0.0;
    let mut c = Vec2::zeros();
    for i in 0..pts.len() {
        let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
        let w = a.x * b.y - b.x * a.y;
        area += w;
        c += (a + b) * w;
    }
    c / (3.0 * area)
}
