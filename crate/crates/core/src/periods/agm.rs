//! Complete elliptic integrals of the first kind.

use std::f64::consts::FRAC_PI_2;

use super::quad::composite_rule;
use crate::error::{Error, Result};

/// Arithmetic–geometric mean of two positive reals.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        (a, b) = ((a + b) / 2.0, (a * b).sqrt());
    }
    a
}

/// `K(k) = pi / (2 AGM(1, sqrt(1 - k^2)))` for `0 <= k < 1`.
pub fn agm_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidArgument(format!("modulus {k} outside [0, 1)")));
    }
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - k * k).sqrt()))
}

/// `K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t)` by Gauss–Legendre.
pub fn quadrature_elliptic_k(k: f64, nodes: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidArgument(format!("modulus {k} outside [0, 1)")));
    }
    let (x, w) = composite_rule(0.0, FRAC_PI_2, nodes, 4);
    Ok(x.iter().zip(&w).map(|(t, w)| w / (1.0 - k * k * t.sin().powi(2)).sqrt()).sum())
}
