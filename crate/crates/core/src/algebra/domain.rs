use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactPoly, Rational};

/// Integral domain with exact division, enough for fraction-free
/// elimination. Implemented for rationals and for univariate polynomials.
pub trait Domain:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// `self / other`, where the caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Domain for Rational {
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
}

impl Domain for ExactPoly {
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    fn from_i64(n: i64) -> Self {
        ExactPoly::constant(Rational::from_integer(n.into()))
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_determinant<R: Domain>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

fn trim<R: Domain>(c: &[R]) -> &[R] {
    let mut len = c.len();
    while len > 0 && c[len - 1].is_zero() {
        len -= 1;
    }
    &c[..len]
}

/// Sylvester-matrix resultant of two coefficient lists (index = degree).
/// Both inputs must be nonzero.
pub fn resultant_of<R: Domain>(f: &[R], g: &[R]) -> R {
    let f = trim(f);
    let g = trim(g);
    assert!(!f.is_empty() && !g.is_empty(), "resultant of the zero polynomial");
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 && n == 0 {
        return R::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    // n shifted copies of f, then m shifted copies of g; leading coefficient first
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}

/// `(-1)^{n(n-1)/2} res(f, f') / lc(f)` for a coefficient list of degree n >= 1.
pub fn discriminant_of<R: Domain>(f: &[R]) -> R {
    let f = trim(f);
    let n = f.len() - 1;
    assert!(n >= 1, "discriminant of a constant");
    if n == 1 {
        return R::one();
    }
    let df: Vec<R> = f.iter().enumerate().skip(1).map(|(k, c)| R::from_i64(k as i64) * c.clone()).collect();
    let res = resultant_of(f, &df).div_exact(&f[n]);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}
