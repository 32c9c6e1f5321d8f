use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rational_sqrt, rational_to_f64, Rational};
use super::{ComplexNum, ExactPoly};
use crate::error::{Error, Result};

/// Coefficient field for truncated series: exact rationals or complex floats.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    fn inv(&self) -> Option<Self>;
    /// A square root, when one is computable in this field.
    fn sqrt(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

impl Scalar for ComplexNum {
    fn from_rational(r: &Rational) -> Self {
        ComplexNum::new(rational_to_f64(r), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }
    fn sqrt(&self) -> Option<Self> {
        Some(ComplexNum::sqrt(*self))
    }
}

/// Truncated Laurent series `sum_{k >= min_exp} c_k w^k`, exact through
/// `w^order` (inclusive). Coefficients above `order` are unknown and are
/// never reported.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<T> {
    var: String,
    min_exp: i64,
    coeffs: Vec<T>,
    order: i64,
}

impl<T: Scalar> LaurentSeries<T> {
    /// `coeffs[k]` multiplies `w^{min_exp + k}`. Coefficients past `order`
    /// are dropped.
    pub fn new(var: &str, min_exp: i64, mut coeffs: Vec<T>, order: i64) -> Result<Self> {
        if order < min_exp {
            return Err(Error::InvalidArgument(format!("truncation order {order} below minimum exponent {min_exp}")));
        }
        coeffs.truncate((order - min_exp + 1) as usize);
        Ok(LaurentSeries { var: var.to_string(), min_exp, coeffs, order })
    }

    /// Polynomial in the base variable, known exactly through `order`.
    pub fn from_poly(var: &str, p: &ExactPoly, order: i64) -> Self {
        let coeffs = p.coeffs().iter().map(T::from_rational).collect();
        Self::new(var, 0, coeffs, order.max(0)).expect("order clamped to >= 0")
    }

    pub fn constant(var: &str, c: T, order: i64) -> Self {
        Self::new(var, 0, vec![c], order.max(0)).expect("order clamped to >= 0")
    }

    /// The series `w` itself.
    pub fn variable(var: &str, order: i64) -> Self {
        Self::new(var, 1, vec![T::one()], order.max(1)).expect("order clamped to >= 1")
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, k: i64) -> Result<T> {
        if k > self.order {
            return Err(Error::InsufficientPrecision { requested: k, order: self.order });
        }
        if k < self.min_exp {
            return Ok(T::zero());
        }
        Ok(self.coeffs.get((k - self.min_exp) as usize).cloned().unwrap_or_else(T::zero))
    }

    /// Drops leading zero coefficients; returns `None` when every known
    /// coefficient vanishes.
    fn normalized(&self) -> Option<Self> {
        let skip = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some(LaurentSeries {
            var: self.var.clone(),
            min_exp: self.min_exp + skip as i64,
            coeffs: self.coeffs[skip..].to_vec(),
            order: self.order,
        })
    }

    /// Exponent and coefficient of the first nonzero term.
    pub fn leading(&self) -> Option<(i64, T)> {
        self.normalized().map(|s| (s.min_exp, s.coeffs[0].clone()))
    }

    pub fn with_order(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut out = self.clone();
        if order < out.min_exp {
            out.min_exp = order;
            out.coeffs.clear();
        } else {
            out.coeffs.truncate((order - out.min_exp + 1) as usize);
        }
        out.order = order;
        out
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let lo = self.min_exp.min(rhs.min_exp).min(order);
        let coeffs = (lo..=order).map(|k| self.coeff(k).unwrap() + rhs.coeff(k).unwrap()).collect();
        LaurentSeries { var: self.var.clone(), min_exp: lo, coeffs, order }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-T::one()))
    }

    /// Product; known through `min(order_a + lead_b, order_b + lead_a)`,
    /// where `lead` is the exponent of the first nonzero term.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = match (self.normalized(), rhs.normalized()) {
            (Some(a), Some(b)) => (a, b),
            // one factor is zero to its known precision
            _ => {
                let la = self.normalized().map_or(self.order + 1, |s| s.min_exp);
                let lb = rhs.normalized().map_or(rhs.order + 1, |s| s.min_exp);
                let order = (self.order + lb).min(rhs.order + la);
                let lo = self.min_exp + rhs.min_exp;
                return LaurentSeries { var: self.var.clone(), min_exp: lo.min(order), coeffs: Vec::new(), order };
            }
        };
        let order = (a.order + b.min_exp).min(b.order + a.min_exp);
        let lo = a.min_exp + b.min_exp;
        let len = (order - lo + 1).max(0) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        LaurentSeries { var: self.var.clone(), min_exp: lo.min(order), coeffs, order }
    }

    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inv(&self) -> Result<Self> {
        let s = self
            .normalized()
            .ok_or_else(|| Error::InvalidArgument("inverse of a series with no known nonzero term".into()))?;
        let lead_inv =
            s.coeffs[0].inv().ok_or_else(|| Error::InvalidArgument("leading coefficient not invertible".into()))?;
        // relative precision of s is order - min_exp
        let rel = s.order - s.min_exp;
        let len = (rel + 1) as usize;
        let mut out: Vec<T> = vec![T::zero(); len];
        for k in 0..len {
            let mut acc = if k == 0 { T::one() } else { T::zero() };
            for j in 1..=k {
                if let Some(c) = s.coeffs.get(j) {
                    acc = acc - c.clone() * out[k - j].clone();
                }
            }
            out[k] = acc * lead_inv.clone();
        }
        Ok(LaurentSeries { var: s.var, min_exp: -s.min_exp, coeffs: out, order: -s.min_exp + rel })
    }

    /// Formal derivative in the base variable.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.min_exp + i as i64;
                c.clone() * T::from_rational(&Rational::from_integer(e.into()))
            })
            .collect();
        LaurentSeries { var: self.var.clone(), min_exp: self.min_exp - 1, coeffs, order: self.order - 1 }
    }

    /// Evaluates a polynomial at this series (Horner).
    pub fn eval_poly(&self, p: &ExactPoly) -> Self {
        let mut acc = Self::constant(&self.var, T::zero(), self.order.max(0));
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(&self.var, T::from_rational(c), self.order.max(0)));
        }
        acc
    }

    /// Substitutes this power series (zero constant term) into `f`, a power
    /// series in another variable: returns `f(self)`.
    pub fn compose_into(&self, f: &Self) -> Result<Self> {
        if f.min_exp < 0 {
            return Err(Error::InvalidArgument("outer series must be a power series".into()));
        }
        let inner_lead = self.leading().map_or(self.order + 1, |(e, _)| e);
        if inner_lead < 1 {
            return Err(Error::InvalidArgument("inner series must vanish at the origin".into()));
        }
        // unknown terms of f start contributing at exponent (f.order + 1) * inner_lead
        let cap = (f.order + 1) * inner_lead - 1;
        let mut acc = Self::constant(&self.var, T::zero(), cap);
        let mut power = Self::constant(&self.var, T::one(), cap);
        for k in 0..=f.order {
            let c = f.coeff(k)?;
            if !c.is_zero() {
                acc = acc.add(&power.scale(&c));
            }
            power = power.mul(self);
        }
        Ok(acc.with_order(cap))
    }

    /// Compositional inverse of a power series `a_1 w + a_2 w^2 + ...` with
    /// `a_1` invertible, computed by fixed-point iteration.
    pub fn revert(&self, new_var: &str) -> Result<Self> {
        if matches!(self.leading(), Some((e, _)) if e < 1) {
            return Err(Error::InvalidArgument("series to revert must vanish at the origin".into()));
        }
        let a1 = self.coeff(1)?;
        let a1_inv = a1.inv().ok_or_else(|| Error::InvalidArgument("series to revert has zero linear term".into()))?;
        let n = self.order;
        // t = (w - (f(t) - a1 t)) / a1, iterated n times
        let w = LaurentSeries::<T>::variable(new_var, n);
        let mut rest = self.clone();
        rest = rest.sub(&LaurentSeries::variable(&self.var, n).scale(&a1));
        let mut rest = rest.with_order(n);
        rest.var = new_var.to_string();
        let mut t = w.scale(&a1_inv);
        for _ in 0..n {
            let higher = t.compose_into(&rest)?;
            t = w.sub(&higher).scale(&a1_inv).with_order(n);
        }
        Ok(t)
    }
}

/// Square root of a series whose leading exponent is even and whose leading
/// coefficient has a computable square root.
pub fn series_sqrt<T: Scalar>(s: &LaurentSeries<T>) -> Result<LaurentSeries<T>> {
    let n = s.normalized().ok_or_else(|| Error::NotASquare("series has no known nonzero term".into()))?;
    if n.min_exp.rem_euclid(2) != 0 {
        return Err(Error::NotASquare(format!("odd leading exponent {}", n.min_exp)));
    }
    let root0 = n.coeffs[0].sqrt().ok_or_else(|| Error::NotASquare("leading coefficient has no square root".into()))?;
    let two_root_inv =
        (root0.clone() + root0.clone()).inv().ok_or_else(|| Error::NotASquare("zero leading coefficient".into()))?;
    let rel = n.order - n.min_exp;
    let len = (rel + 1) as usize;
    let mut r: Vec<T> = vec![T::zero(); len];
    r[0] = root0;
    for k in 1..len {
        let mut acc = n.coeffs.get(k).cloned().unwrap_or_else(T::zero);
        for j in 1..k {
            acc = acc - r[j].clone() * r[k - j].clone();
        }
        r[k] = acc * two_root_inv.clone();
    }
    let half = n.min_exp / 2;
    Ok(LaurentSeries { var: n.var, min_exp: half, coeffs: r, order: half + rel })
}

/// Coefficient of `w^k`; errors when `k` exceeds the known precision.
pub fn laurent_coeff<T: Scalar>(s: &LaurentSeries<T>, k: i64) -> Result<T> {
    s.coeff(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn q(c: &[(i64, i64)], min: i64, order: i64) -> LaurentSeries<Rational> {
        LaurentSeries::new("w", min, c.iter().map(|&(n, d)| rat(n, d)).collect(), order).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        let s = q(&[(1, 1), (2, 1), (1, 1)], 0, 6);
        let r = series_sqrt(&s).unwrap();
        assert_eq!(r.coeff(0).unwrap(), rat(1, 1));
        assert_eq!(r.coeff(1).unwrap(), rat(1, 1));
        for k in 2..=6 {
            assert_eq!(r.coeff(k).unwrap(), rat(0, 1));
        }
        let one = q(&[(1, 1)], 0, 4);
        assert_eq!(series_sqrt(&one).unwrap().coeff(0).unwrap(), rat(1, 1));
        let mono = q(&[(4, 1)], 2, 5);
        let r = series_sqrt(&mono).unwrap();
        assert_eq!(r.min_exp(), 1);
        assert_eq!(r.coeff(1).unwrap(), rat(2, 1));
        assert_eq!(r.coeff(2).unwrap(), rat(0, 1));
        let odd = q(&[(1, 1)], 1, 5);
        assert!(matches!(series_sqrt(&odd), Err(Error::NotASquare(_))));
    }

    #[test]
    fn coeff_readoff_and_precision() {
        // w^-2 + 3 + w
        let s = q(&[(1, 1), (0, 1), (3, 1), (1, 1)], -2, 1);
        assert_eq!(laurent_coeff(&s, -2).unwrap(), rat(1, 1));
        assert_eq!(laurent_coeff(&s, -1).unwrap(), rat(0, 1));
        assert_eq!(laurent_coeff(&s, -7).unwrap(), rat(0, 1));
        assert!(matches!(laurent_coeff(&s, 2), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn sqrt_composition_matches_substitution() {
        // sqrt(1 + w) evaluated as a series, then squared and composed with w = t^2
        let s = q(&[(1, 1), (1, 1)], 0, 8);
        let r = series_sqrt(&s).unwrap();
        // binomial series: c_k = binom(1/2, k)
        let mut c = rat(1, 1);
        for k in 0..=8i64 {
            assert_eq!(r.coeff(k).unwrap(), c);
            c = c * (rat(1, 2) - rat(k, 1)) / rat(k + 1, 1);
        }
    }

    #[test]
    fn revert_inverts() {
        // f(t) = t + t^2
        let f = q(&[(1, 1), (1, 1)], 1, 8);
        let g = f.revert("u").unwrap();
        let mut back = g.compose_into(&f).unwrap();
        back.var = "u".into();
        assert_eq!(back.coeff(1).unwrap(), rat(1, 1));
        for k in 2..=back.order() {
            assert_eq!(back.coeff(k).unwrap(), rat(0, 1), "k = {k}");
        }
        // Catalan numbers with alternating signs
        assert_eq!(g.coeff(2).unwrap(), rat(-1, 1));
        assert_eq!(g.coeff(3).unwrap(), rat(2, 1));
        assert_eq!(g.coeff(4).unwrap(), rat(-5, 1));
    }

    #[test]
    fn inverse_series() {
        let s = q(&[(1, 1), (-1, 1)], 1, 6); // w - w^2
        let i = s.inv().unwrap();
        assert_eq!(i.min_exp(), -1);
        for k in -1..=4 {
            assert_eq!(i.coeff(k).unwrap(), rat(1, 1));
        }
        assert_eq!(s.mul(&i).coeff(0).unwrap(), rat(1, 1));
    }

    fn unit_series() -> impl Strategy<Value = LaurentSeries<Rational>> {
        (1i64..=5, prop::collection::vec((-5i64..=5, 1i64..=4), 0..6)).prop_map(|(r, tail)| {
            let mut c = vec![rat(r * r, 1)];
            c.extend(tail.into_iter().map(|(n, d)| rat(n, d)));
            LaurentSeries::new("w", 0, c, 7).unwrap()
        })
    }

    fn any_series(min: i64) -> impl Strategy<Value = LaurentSeries<Rational>> {
        (prop::collection::vec((-5i64..=5, 1i64..=4), 1..8), 2i64..8).prop_map(move |(c, order)| {
            LaurentSeries::new("w", min, c.into_iter().map(|(n, d)| rat(n, d)).collect(), min + order).unwrap()
        })
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(s in unit_series()) {
            let r = series_sqrt(&s).unwrap();
            let sq = r.mul(&r);
            prop_assert_eq!(sq.order(), s.order());
            for k in 0..=s.order() {
                prop_assert_eq!(sq.coeff(k).unwrap(), s.coeff(k).unwrap());
            }
        }

        #[test]
        fn truncated_product_agrees_with_full_convolution(a in any_series(-2), b in any_series(1)) {
            let prod = a.mul(&b);
            // full convolution of the known coefficients
            for k in prod.min_exp()..=prod.order() {
                let mut full = Rational::zero();
                for i in a.min_exp()..=a.order() {
                    let j = k - i;
                    if j >= b.min_exp() && j <= b.order() {
                        full += a.coeff(i).unwrap() * b.coeff(j).unwrap();
                    }
                }
                prop_assert_eq!(prod.coeff(k).unwrap(), full);
            }
            // and no coefficient past the common precision is reported
            prop_assert!(prod.coeff(prod.order() + 1).is_err());
        }
    }
}
