//! Exact univariate and multivariate algebra over the rationals, truncated
//! Laurent series, and the small amount of dense linear algebra the other
//! modules need.

mod domain;
pub mod linalg;
mod multipoly;
mod poly;
mod rational;
mod series;

pub use domain::{bareiss_determinant, discriminant_of, resultant_of, Domain};
pub use multipoly::MultiPoly;
pub use poly::{poly_gcd, ExactPoly};
pub use rational::{parse_rational, rat, rational_sqrt, rational_to_f64, Rational};
pub use series::{laurent_coeff, series_sqrt, LaurentSeries, Scalar};

pub use num_complex::Complex64 as ComplexNum;

use crate::error::{Error, Result};

/// Discriminant of a univariate polynomial, normalised as
/// `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
pub fn discriminant(f: &ExactPoly) -> Result<Rational> {
    match f.degree() {
        Some(n) if n >= 1 => Ok(discriminant_of(f.coeffs())),
        _ => Err(Error::DegreeTooSmall(format!("discriminant needs degree >= 1, got {}", f.degree_string()))),
    }
}

/// Sylvester resultant of two univariate polynomials. The resultant with the
/// zero polynomial is zero.
pub fn resultant(f: &ExactPoly, g: &ExactPoly) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::from_integer(0.into());
    }
    resultant_of(f.coeffs(), g.coeffs())
}

/// Rejects NaN and infinities.
pub fn ensure_finite(z: ComplexNum, what: &str) -> Result<ComplexNum> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
