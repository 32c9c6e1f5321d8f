use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rational_to_f64, Rational};
use super::ComplexNum;

/// Dense univariate polynomial over the rationals; `coeffs[k]` multiplies `z^k`.
///
/// The zero polynomial has no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `prod (z - r)`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc * Self::new(vec![-r.clone(), Rational::one()]))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn degree_string(&self) -> String {
        self.degree().map_or_else(|| "-inf".to_string(), |d| d.to_string())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: ComplexNum) -> ComplexNum {
        self.coeffs.iter().rev().fold(ComplexNum::new(0.0, 0.0), |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Inverse of `self` modulo `m`, when the two are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        // extended Euclid tracking only the coefficient of self
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0 - q * s1.clone();
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(s0.scale(&inv).rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => poly_gcd(self, &self.derivative()).degree() == Some(0),
        }
    }
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)` and `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    x.monic()
}

impl Zero for ExactPoly {
    fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ExactPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: Self) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: Self) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: Self) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> Self {
        ExactPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        // z^4 - 5z^2 + 4 against 4z^3 - 10z: remainders -5/2 z^2 + 4, then
        // -18/5 z, then 4, so the gcd is 1.
        assert_eq!(poly_gcd(&p(&[4, 0, -5, 0, 1]), &p(&[0, -10, 0, 4])), ExactPoly::one());
        assert!(poly_gcd(&ExactPoly::zero(), &ExactPoly::zero()).is_zero());
        assert_eq!(poly_gcd(&p(&[2, 4]), &ExactPoly::zero()), p(&[1, 2]).scale(&rat(1, 2)).monic());
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(ExactPoly::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn division_and_inverse() {
        let b = p(&[4, 0, -5, 0, 1]);
        let (q, r) = b.div_rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q * p(&[-1, 1]), b);
        let inv = b.derivative().inverse_mod(&b).unwrap();
        assert_eq!((inv * b.derivative()).rem(&b), ExactPoly::one());
        assert!(p(&[-1, 1]).inverse_mod(&p(&[-1, 0, 1])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[4, 0, -5, 0, 1]).to_string(), "z^4 - 5*z^2 + 4");
        assert_eq!(p(&[0, -1]).to_string(), "-z");
        assert_eq!(ExactPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = ExactPoly> {
        prop::collection::vec((-6i64..=6, 1i64..=3), 0..5)
            .prop_map(|cs| ExactPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn resultant_vanishes_iff_common_factor(a in small_poly(), b in small_poly(), common in 0i64..2, r in -3i64..3) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (a, b) = if common == 1 {
                let f = p(&[-r, 1]);
                (a * f.clone(), b * f)
            } else {
                (a, b)
            };
            let res = crate::algebra::resultant(&a, &b);
            let g = poly_gcd(&a, &b);
            prop_assert_eq!(res.is_zero(), g.degree().unwrap_or(0) > 0);
        }
    }
}
