//! Principal minors of the Hessian of the distance sum in the osculating
//! two-circle scene of the hyperbolic disk.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::leading_minors;

/// Largest circle radius accepted by [`hyperbolic_minor_checks`].
pub const MAX_RADIUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorCase {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinorCheck {
    pub order: usize,
    /// The minor at `d = 0`; in case two scaled by `eps` and extrapolated
    /// to `eps -> 0`.
    pub computed: f64,
    pub expected: f64,
    pub relative_error: f64,
    pub sign_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct M4Check {
    /// `det(M4) / d` as `d -> 0`, times `eps` in case two.
    pub scaled_limit: f64,
    /// Closed form as published.
    pub published_limit: f64,
    /// Closed form of the limit obtained by direct expansion.
    pub derived_limit: f64,
    pub sign_positive_d: f64,
    pub sign_negative_d: f64,
    pub expected_sign_positive_d: f64,
    pub sign_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorReport {
    pub radius: f64,
    pub case: MinorCase,
    pub minors: Vec<MinorCheck>,
    pub m4: M4Check,
    pub passed: bool,
}

/// Hyper-dual number `re + e1 E1 + e2 E2 + e12 E1E2` with `E1^2 = E2^2 = 0`:
/// the `e12` part of `f(x + E1 u + E2 w)` is `u^T H w`.
#[derive(Debug, Clone, Copy)]
struct Hd {
    re: f64,
    e1: f64,
    e2: f64,
    e12: f64,
}

impl Hd {
    fn cst(re: f64) -> Self {
        Hd { re, e1: 0.0, e2: 0.0, e12: 0.0 }
    }

    /// Applies `f` with first and second derivatives `d1`, `d2` at `re`.
    fn chain(self, f: f64, d1: f64, d2: f64) -> Self {
        Hd {
            re: f,
            e1: d1 * self.e1,
            e2: d1 * self.e2,
            e12: d1 * self.e12 + d2 * self.e1 * self.e2,
        }
    }

    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin(), -self.re.cos())
    }

    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos(), -self.re.sin())
    }

    fn recip(self) -> Self {
        let r = 1.0 / self.re;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    fn acosh(self) -> Self {
        let q = self.re * self.re - 1.0;
        self.chain(self.re.acosh(), 1.0 / q.sqrt(), -self.re / (q * q.sqrt()))
    }
}

impl std::ops::Add for Hd {
    type Output = Hd;
    fn add(self, o: Hd) -> Hd {
        Hd { re: self.re + o.re, e1: self.e1 + o.e1, e2: self.e2 + o.e2, e12: self.e12 + o.e12 }
    }
}

impl std::ops::Sub for Hd {
    type Output = Hd;
    fn sub(self, o: Hd) -> Hd {
        self + o * Hd::cst(-1.0)
    }
}

impl std::ops::Mul for Hd {
    type Output = Hd;
    fn mul(self, o: Hd) -> Hd {
        Hd {
            re: self.re * o.re,
            e1: self.re * o.e1 + self.e1 * o.re,
            e2: self.re * o.e2 + self.e2 * o.re,
            e12: self.re * o.e12 + self.e1 * o.e2 + self.e2 * o.e1 + self.e12 * o.re,
        }
    }
}

fn disk_distance(a: (Hd, Hd), b: (Hd, Hd)) -> Hd {
    let one = Hd::cst(1.0);
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    let num = (dx * dx + dy * dy) * Hd::cst(2.0);
    let den = (one - a.0 * a.0 - a.1 * a.1) * (one - b.0 * b.0 - b.1 * b.1);
    (one + num * den.recip()).acosh()
}

/// Distance sum of the scene: `p` on the circle of radius `R` about the
/// origin at angle `pi + alpha`; feet on the circle of radius `R` about
/// `(d, 0)` (or, for the first foot in case two, on the circle of radius
/// `R + eps` about the origin).
fn scene(case: MinorCase, r: f64, d: f64, eps: f64, x: &[Hd; 4]) -> Hd {
    let polar = |c: f64, rad: f64, a: Hd| (Hd::cst(c) + Hd::cst(rad) * a.cos(), Hd::cst(rad) * a.sin());
    let p = polar(0.0, -r, x[0]);
    let t = match case {
        MinorCase::One => polar(d, r, x[1]),
        MinorCase::Two => polar(0.0, -(r + eps), x[1]),
    };
    disk_distance(t, p) + disk_distance(polar(d, r, x[2]), p) + disk_distance(polar(d, r, x[3]), p)
}

/// Leading principal minors of the exact Hessian at the origin.
fn minors_at(case: MinorCase, r: f64, d: f64, eps: f64) -> Vec<f64> {
    let h = DMatrix::from_fn(4, 4, |i, j| {
        let x: [Hd; 4] = std::array::from_fn(|k| Hd {
            re: 0.0,
            e1: if k == i { 1.0 } else { 0.0 },
            e2: if k == j { 1.0 } else { 0.0 },
            e12: 0.0,
        });
        scene(case, r, d, eps, &x).e12
    });
    leading_minors(&h)
}

/// `d/dd det(M4)` at `d = 0`: symmetric quotient with one Richardson step.
fn m4_slope(case: MinorCase, r: f64, eps: f64, dd: f64) -> f64 {
    let q = |dd: f64| (minors_at(case, r, dd, eps)[3] - minors_at(case, r, -dd, eps)[3]) / (2.0 * dd);
    (4.0 * q(dd / 2.0) - q(dd)) / 3.0
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Finite-difference minors of the two-circle scene against their closed
/// forms, for `0 < R <= 0.95`.
pub fn hyperbolic_minor_checks(radius: f64, case: MinorCase) -> Result<MinorReport> {
    let r = radius;
    if !(r > 0.0 && r <= MAX_RADIUS) {
        return Err(Error::InvalidInput(format!(
            "radius {r} must lie in (0, {MAX_RADIUS}]"
        )));
    }
    let r2 = r * r;
    let r4 = r2 * r2;
    match case {
        MinorCase::One => {
            let m = minors_at(case, r, 0.0, 0.0);
            let expected = [-3.0 * r / (r2 + 1.0), 2.0 * r2 / (r2 + 1.0).powi(2), -r.powi(3) / (r2 + 1.0).powi(3)];
            let minors: Vec<MinorCheck> = (0..3)
                .map(|i| MinorCheck {
                    order: i + 1,
                    computed: m[i],
                    expected: expected[i],
                    relative_error: rel(m[i], expected[i]),
                    sign_ok: m[i].signum() == expected[i].signum(),
                })
                .collect();
            let scaled_limit = m4_slope(case, r, 0.0, 1e-3);
            let published = -6.0 * r.powi(3) / ((r4 + 1.0 + 2.0 * r2) * (r4 - 1.0));
            let sp = minors_at(case, r, 1e-4, 0.0)[3].signum();
            let sn = minors_at(case, r, -1e-4, 0.0)[3].signum();
            let m4 = M4Check {
                scaled_limit,
                published_limit: published,
                derived_limit: published,
                sign_positive_d: sp,
                sign_negative_d: sn,
                expected_sign_positive_d: 1.0,
                sign_ok: sp > 0.0 && sn < 0.0,
            };
            let passed = minors.iter().all(|c| c.relative_error < 1e-4 && c.sign_ok)
                && rel(scaled_limit, published) < 1e-3
                && m4.sign_ok;
            Ok(MinorReport {
                radius: r,
                case,
                minors,
                m4,
                passed,
            })
        }
        MinorCase::Two => {
            // eps-scaled minors at d = 0 and the eps-scaled slope of det(M4)
            let at = |eps: f64| -> [f64; 4] {
                let m = minors_at(case, r, 0.0, eps);
                [m[0] * eps, m[1] * eps, m[2] * eps, m4_slope(case, r, eps, eps / 10.0) * eps]
            };
            // two Richardson levels in eps
            let eps0 = 4e-3;
            let levels = [at(eps0), at(eps0 / 2.0), at(eps0 / 4.0)];
            let extrapolated: Vec<f64> = (0..4)
                .map(|i| {
                    let r1 = 2.0 * levels[1][i] - levels[0][i];
                    let r2 = 2.0 * levels[2][i] - levels[1][i];
                    (4.0 * r2 - r1) / 3.0
                })
                .collect();
            let m = &extrapolated[..3];
            let expected = [2.0 * r2 / (1.0 - r2), -4.0 * r.powi(3) / (1.0 - r4), 2.0 * r4 / ((1.0 - r2) * (r2 + 1.0).powi(2))];
            let minors: Vec<MinorCheck> = (0..3)
                .map(|i| MinorCheck {
                    order: i + 1,
                    computed: m[i],
                    expected: expected[i],
                    relative_error: rel(m[i], expected[i]),
                    sign_ok: m[i].signum() == expected[i].signum(),
                })
                .collect();
            let scaled_limit = extrapolated[3];
            let eps0 = 1e-3;
            let published = -2.0 * r4 * (r2 + 1.0) / ((r4 + 1.0).powf(1.5) * (r2 - 1.0).powi(2));
            let derived = -8.0 * r4 / (1.0 - r4).powi(2);
            let sp = minors_at(case, r, 1e-4, eps0)[3].signum();
            let sn = minors_at(case, r, -1e-4, eps0)[3].signum();
            let m4 = M4Check {
                scaled_limit,
                published_limit: published,
                derived_limit: derived,
                sign_positive_d: sp,
                sign_negative_d: sn,
                expected_sign_positive_d: -1.0,
                sign_ok: sp < 0.0 && sn > 0.0 && scaled_limit.signum() == published.signum(),
            };
            let passed = minors.iter().all(|c| c.relative_error < 1e-3 && c.sign_ok) && m4.sign_ok;
            Ok(MinorReport {
                radius: r,
                case,
                minors,
                m4,
                passed,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_one_at_half() {
        let rep = hyperbolic_minor_checks(0.5, MinorCase::One).unwrap();
        let want = [-1.2, 0.32, -0.064];
        for (c, w) in rep.minors.iter().zip(want) {
            assert!((c.computed - w).abs() < 1e-6 * w.abs(), "{c:?}");
        }
        assert!((rep.m4.scaled_limit - 0.512).abs() < 1e-4);
        assert!(rep.passed);
    }

    #[test]
    fn case_one_limits() {
        for (r, want) in [(0.3, 0.137466), (0.7, 1.219878)] {
            let rep = hyperbolic_minor_checks(r, MinorCase::One).unwrap();
            assert!((rep.m4.scaled_limit - want).abs() < 1e-5, "{rep:?}");
            assert!(rep.passed);
        }
    }

    #[test]
    fn case_two_signs_and_scaled_limits() {
        for r in [0.3, 0.5, 0.7] {
            let rep = hyperbolic_minor_checks(r, MinorCase::Two).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert!(rep.m4.scaled_limit < 0.0);
            assert!(rel(rep.m4.scaled_limit, rep.m4.derived_limit) < 1e-3, "{rep:?}");
        }
        let rep = hyperbolic_minor_checks(0.5, MinorCase::Two).unwrap();
        assert!((rep.m4.derived_limit + 0.568889).abs() < 1e-6);
    }

    #[test]
    fn exact_hessian_matches_finite_differences() {
        use crate::geometry::{GeometryKind, Vec2};
        use crate::numeric::hessian;
        use nalgebra::DVector;
        let g = GeometryKind::HyperbolicDisk;
        let (r, d, eps) = (0.4, 0.03, 0.05);
        let f = |y: &DVector<f64>| {
            let p = Vec2::new(-r * y[0].cos(), -r * y[0].sin());
            let t = Vec2::new(-(r + eps) * y[1].cos(), -(r + eps) * y[1].sin());
            let far = |a: f64| Vec2::new(d + r * a.cos(), r * a.sin());
            g.distance_unchecked(t, p) + g.distance_unchecked(far(y[2]), p) + g.distance_unchecked(far(y[3]), p)
        };
        let fd = hessian(&f, &DVector::zeros(4), 1e-3);
        let exact = leading_minors(&fd);
        let m = minors_at(MinorCase::Two, r, d, eps);
        for (a, b) in m.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-5 * b.abs().max(1.0), "{m:?} vs {exact:?}");
        }
    }

    #[test]
    fn rejects_large_radius() {
        assert!(hyperbolic_minor_checks(0.96, MinorCase::One).is_err());
        assert!(hyperbolic_minor_checks(0.0, MinorCase::Two).is_err());
    }
}
