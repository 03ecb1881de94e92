//! Small numerical toolbox: bracketed roots, golden-section search,
//! finite-difference derivatives and symmetric eigen/minor helpers.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Root of `f` in the sign-change bracket `[lo, hi]`.
///
/// Brent-style iteration: inverse quadratic / secant steps are accepted only
/// when they stay inside the shrinking bracket, otherwise bisect.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonConvergence { lo, hi });
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..200 {
        if fb == 0.0 || (b - a).abs() <= xtol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo_s = (3.0 * a + b) / 4.0;
        let outside = !((s > lo_s.min(b)) && (s < lo_s.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < xtol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < xtol
        };
        if outside || slow || !s.is_finite() {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    if (b - a).abs() <= 1e3 * xtol.max(f64::EPSILON * b.abs()) {
        Ok(b)
    } else {
        Err(Error::NonConvergence { lo, hi })
    }
}

/// Maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (hi - lo).abs() > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Central-difference derivative.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central-difference gradient.
pub fn gradient<F: Fn(&DVector<f64>) -> f64>(f: &F, x: &DVector<f64>, h: f64) -> DVector<f64> {
    let mut g = DVector::zeros(x.len());
    let mut xp = x.clone();
    for i in 0..x.len() {
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

fn hessian_step<F: Fn(&DVector<f64>) -> f64>(f: &F, x: &DVector<f64>, h: f64) -> DMatrix<f64> {
    let n = x.len();
    let f0 = f(x);
    let mut hm = DMatrix::zeros(n, n);
    let mut y = x.clone();
    for i in 0..n {
        y[i] = x[i] + h;
        let fp = f(&y);
        y[i] = x[i] - h;
        let fm = f(&y);
        y[i] = x[i];
        hm[(i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
        for j in 0..i {
            let mut eval = |si: f64, sj: f64| {
                y[i] = x[i] + si * h;
                y[j] = x[j] + sj * h;
                let v = f(&y);
                y[i] = x[i];
                y[j] = x[j];
                v
            };
            let v = (eval(1.0, 1.0) - eval(1.0, -1.0) - eval(-1.0, 1.0) + eval(-1.0, -1.0))
                / (4.0 * h * h);
            hm[(i, j)] = v;
            hm[(j, i)] = v;
        }
    }
    hm
}

/// Central-difference Hessian with one Richardson extrapolation step
/// (combines steps `h` and `h/2`, error `O(h^4)`).
pub fn hessian<F: Fn(&DVector<f64>) -> f64>(f: &F, x: &DVector<f64>, h: f64) -> DMatrix<f64> {
    let coarse = hessian_step(f, x, h);
    let fine = hessian_step(f, x, h / 2.0);
    (fine * 4.0 - coarse) / 3.0
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Determinants of the leading principal minors `M_1 .. M_n`.
pub fn leading_minors(m: &DMatrix<f64>) -> Vec<f64> {
    (1..=m.nrows())
        .map(|k| m.view((0, 0), (k, k)).into_owned().determinant())
        .collect()
}

/// Morse index of a Hessian: count of negative eigenvalues, plus whether
/// any eigenvalue falls inside `degenerate_tol` of zero.
pub fn morse_index(eigenvalues: &[f64], degenerate_tol: f64) -> (usize, bool) {
    let index = eigenvalues.iter().filter(|&&e| e < 0.0).count();
    let degenerate = eigenvalues.iter().any(|e| e.abs() < degenerate_tol);
    (index, degenerate)
}

/// Roots of `f` on `[lo, hi]` found by scanning `n` intervals for sign
/// changes and refining each bracket.
pub fn scan_roots<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, n: usize, xtol: f64) -> Vec<Result<f64>> {
    let step = (hi - lo) / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| f(lo + step * i as f64)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (lo + step * i as f64, lo + step * (i + 1) as f64);
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            out.push(Ok(a));
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            out.push(find_root(f, a, b, xtol));
        }
    }
    out
}

/// Reduces `x` into `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Signed shortest difference `b - a` on a circle of length `period`.
pub fn circular_diff(a: f64, b: f64, period: f64) -> f64 {
    let d = wrap(b - a, period);
    if d > period / 2.0 {
        d - period
    } else {
        d
    }
}

/// Whether two triples of circle parameters agree up to order.
pub fn same_circular_triple(a: &[f64; 3], b: &[f64; 3], period: f64, tol: f64) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS
        .iter()
        .any(|p| (0..3).all(|i| circular_diff(a[i], b[p[i]], period).abs() < tol))
}
