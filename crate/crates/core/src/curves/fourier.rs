use std::f64::consts::TAU;

use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use super::{CurveModel, Jet};
use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Trigonometric series `c0 + sum_k a_k cos(k t) + b_k sin(k t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigSeries {
    pub c0: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigSeries {
    pub fn constant(c0: f64) -> Self {
        Self {
            c0,
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    /// Value and first three derivatives at `t`, with frequency `k * scale`.
    pub fn eval(&self, t: f64, scale: f64) -> [f64; 4] {
        let mut out = [self.c0, 0.0, 0.0, 0.0];
        let terms = self.cos.len().max(self.sin.len());
        for k in 1..=terms {
            let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
            let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let w = k as f64 * scale;
            let (s, c) = (w * t).sin_cos();
            let v = a * c + b * s;
            let dv = w * (b * c - a * s);
            out[0] += v;
            out[1] += dv;
            out[2] -= w * w * v;
            out[3] -= w * w * dv;
        }
        out
    }
}

/// Closed parametric curve with both coordinates given by trigonometric
/// series in `t in [0, 2pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierCurve {
    pub x: TrigSeries,
    pub y: TrigSeries,
}

impl FourierCurve {
    pub fn ellipse(a: f64, b: f64) -> Self {
        Self {
            x: TrigSeries {
                c0: 0.0,
                cos: vec![a],
                sin: vec![],
            },
            y: TrigSeries {
                c0: 0.0,
                cos: vec![],
                sin: vec![b],
            },
        }
    }

    /// The limaçon `(b + a cos t) (cos t, sin t)`; it has an inner loop when
    /// `a > b`.
    pub fn limacon(a: f64, b: f64) -> Self {
        Self {
            x: TrigSeries {
                c0: a / 2.0,
                cos: vec![b, a / 2.0],
                sin: vec![],
            },
            y: TrigSeries {
                c0: 0.0,
                cos: vec![],
                sin: vec![b, a / 2.0],
            },
        }
    }

    /// Trigonometric interpolant of points sampled at equally spaced
    /// parameters around a closed curve, truncated to `max_harmonics`.
    pub fn from_samples(points: &[Vec2], max_harmonics: Option<usize>) -> Result<Self> {
        let n = points.len();
        if n < 8 {
            return Err(Error::MalformedCurve(format!(
                "need at least 8 samples, got {n}"
            )));
        }
        if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::MalformedCurve("non-finite sample coordinate".into()));
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let mut buf: Vec<Complex<f64>> = points.iter().map(|p| Complex::new(p.x, p.y)).collect();
        fft.process(&mut buf);
        let nyquist = (n - 1) / 2;
        let harmonics = max_harmonics.unwrap_or(nyquist).min(nyquist);
        let scale = 1.0 / n as f64;
        let mut x = TrigSeries::constant(buf[0].re * scale);
        let mut y = TrigSeries::constant(buf[0].im * scale);
        for k in 1..=harmonics {
            // z(t) = sum_k Z_k e^{ikt}; Z_k = buf[k] / n, Z_{-k} = buf[n-k] / n
            let zp = buf[k] * scale;
            let zm = buf[n - k] * scale;
            let sum = zp + zm;
            let diff = zp - zm;
            x.cos.push(sum.re);
            x.sin.push(-diff.im);
            y.cos.push(sum.im);
            y.sin.push(diff.re);
        }
        Ok(Self { x, y })
    }
}

impl CurveModel for FourierCurve {
    fn period(&self) -> f64 {
        TAU
    }

    fn jet(&self, t: f64) -> Jet {
        let x = self.x.eval(t, 1.0);
        let y = self.y.eval(t, 1.0);
        Jet {
            pos: Vec2::new(x[0], y[0]),
            d1: Vec2::new(x[1], y[1]),
            d2: Vec2::new(x[2], y[2]),
        }
    }
}

/// How a radial profile is turned into chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialChart {
    /// Euclidean radius.
    Plane,
    /// Euclidean radius inside the Poincaré disk.
    Disk,
    /// Polar angle on the unit sphere, measured from the hemisphere pole.
    Sphere,
}

/// Star-shaped curve `theta -> R(rho(theta)) (cos theta, sin theta)` with a
/// trigonometric radial profile `rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialCurve {
    pub chart: RadialChart,
    pub profile: TrigSeries,
}

impl RadialCurve {
    pub fn new(chart: RadialChart, profile: TrigSeries) -> Self {
        Self { chart, profile }
    }

    pub fn circle(chart: RadialChart, radius: f64) -> Self {
        Self::new(chart, TrigSeries::constant(radius))
    }

    /// Adds `amplitude cos(k theta + phase)` to the profile.
    pub fn with_harmonic(mut self, k: usize, amplitude: f64, phase: f64) -> Self {
        if self.profile.cos.len() < k {
            self.profile.cos.resize(k, 0.0);
        }
        if self.profile.sin.len() < k {
            self.profile.sin.resize(k, 0.0);
        }
        self.profile.cos[k - 1] += amplitude * phase.cos();
        self.profile.sin[k - 1] -= amplitude * phase.sin();
        self
    }

    fn chart_radius(&self, rho: [f64; 4]) -> [f64; 3] {
        match self.chart {
            RadialChart::Plane | RadialChart::Disk => [rho[0], rho[1], rho[2]],
            RadialChart::Sphere => {
                let f = (rho[0] / 2.0).tan();
                let f1 = (1.0 + f * f) / 2.0;
                let f2 = f * f1;
                [f, f1 * rho[1], f2 * rho[1] * rho[1] + f1 * rho[2]]
            }
        }
    }

    pub fn min_max_profile(&self, samples: usize) -> (f64, f64) {
        (0..samples)
            .map(|i| self.profile.eval(TAU * i as f64 / samples as f64, 1.0)[0])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }
}

impl CurveModel for RadialCurve {
    fn period(&self) -> f64 {
        TAU
    }

    fn jet(&self, theta: f64) -> Jet {
        let [r, r1, r2] = self.chart_radius(self.profile.eval(theta, 1.0));
        let (s, c) = theta.sin_cos();
        let e = Vec2::new(c, s);
        let e_perp = Vec2::new(-s, c);
        Jet {
            pos: e * r,
            d1: e * r1 + e_perp * r,
            d2: e * (r2 - r) + e_perp * (2.0 * r1),
        }
    }
}
