use serde::{Deserialize, Serialize};

use super::{CriticalKind, CriticalPoint};

/// Polynomials of the critical point count identity, coefficients in
/// ascending powers of `T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorsePolynomials {
    /// Interior critical points by index.
    pub c_poly: Vec<i64>,
    /// Type D boundary critical points, each at degree `index + 1`.
    pub d_poly: Vec<i64>,
    pub m_d_poly: Vec<i64>,
    /// `(1 + T)^3`.
    pub poincare_poly: Vec<i64>,
    /// `(M^D(T) - T^5 P(1/T)) / (1 + T)`.
    pub quotient: Vec<i64>,
    pub remainder: i64,
    pub divisible: bool,
    pub nonnegative_quotient: bool,
    /// `C(T)` has positive coefficients in at least two degrees.
    pub two_interior_degrees: bool,
    pub n_count_note: String,
    /// Bookkeeping was not attempted (continuous critical families).
    pub skipped: bool,
}

impl MorsePolynomials {
    pub fn holds(&self) -> bool {
        !self.skipped && self.divisible && self.nonnegative_quotient
    }
}

fn add(poly: &mut Vec<i64>, degree: usize, count: i64) {
    if poly.len() <= degree {
        poly.resize(degree + 1, 0);
    }
    poly[degree] += count;
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Quotient and remainder of the division by `1 + T` (ascending
/// coefficients).
pub fn poly_divide_one_plus_t(a: &[i64]) -> (Vec<i64>, i64) {
    if a.is_empty() {
        return (vec![0], 0);
    }
    let n = a.len() - 1;
    let mut q = vec![0i64; n.max(1)];
    let mut carry = 0i64;
    for k in (1..=n).rev() {
        let c = a[k] - carry;
        q[k - 1] = c;
        carry = c;
    }
    (trim(q), a[0] - carry)
}

/// Assembles `M^D` from interior critical points (index `k` at degree `k`)
/// and type D boundary points (index `k` at degree `k + 1`), each weighted
/// by its orbit size, and checks the division by `1 + T`.
pub fn morse_bookkeeping(interior: &[CriticalPoint], boundary: &[CriticalPoint], continuum: bool) -> MorsePolynomials {
    let poincare = vec![1, 3, 3, 1];
    if continuum {
        return MorsePolynomials {
            c_poly: vec![0],
            d_poly: vec![0],
            m_d_poly: vec![0],
            poincare_poly: poincare,
            quotient: vec![0],
            remainder: 0,
            divisible: false,
            nonnegative_quotient: false,
            two_interior_degrees: false,
            n_count_note: "skipped: continuous family of critical points".into(),
            skipped: true,
        };
    }
    let mut c = vec![0i64];
    for cp in interior.iter().filter(|c| c.kind == CriticalKind::Interior) {
        add(&mut c, cp.morse_index, cp.orbit_size as i64);
    }
    let mut d = vec![0i64];
    for cp in boundary.iter().filter(|c| c.kind == CriticalKind::TypeD) {
        add(&mut d, cp.morse_index + 1, cp.orbit_size as i64);
    }
    let n_points = boundary.iter().filter(|c| c.kind == CriticalKind::TypeN).count();
    finish(trim(c), trim(d), poincare, n_points)
}

/// Bookkeeping for a given `C(T)` and `n` pairs of diameters, using the
/// boundary index table.
pub fn bookkeeping_from_table(c_poly: &[i64], n: i64) -> MorsePolynomials {
    let d = vec![0, 0, 0, 6 * n, 8 * n, 2 * n];
    finish(trim(c_poly.to_vec()), d, vec![1, 3, 3, 1], 0)
}

fn finish(c: Vec<i64>, d: Vec<i64>, poincare: Vec<i64>, n_points: usize) -> MorsePolynomials {
    let mut m = vec![0i64; c.len().max(d.len()).max(6)];
    for (i, x) in c.iter().enumerate() {
        m[i] += x;
    }
    for (i, x) in d.iter().enumerate() {
        m[i] += x;
    }
    // T^5 P(1/T) = T^2 (1 + T)^3
    let mut a = m.clone();
    for (i, x) in poincare.iter().enumerate() {
        a[5 - i] -= x;
    }
    let (quotient, remainder) = poly_divide_one_plus_t(&trim(a));
    let positive_degrees = c.iter().filter(|&&x| x > 0).count();
    MorsePolynomials {
        c_poly: c,
        d_poly: d,
        m_d_poly: trim(m),
        poincare_poly: poincare,
        divisible: remainder == 0,
        nonnegative_quotient: quotient.iter().all(|&x| x >= 0),
        quotient,
        remainder,
        two_interior_degrees: positive_degrees >= 2,
        n_count_note: format!("type N critical points are not enumerated ({n_points} seen at diameters)"),
        skipped: false,
    }
}
