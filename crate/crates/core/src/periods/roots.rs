use num_traits::Zero;

use crate::algebra::{ComplexNum, ExactPoly};
use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

fn horner_with_derivative(c: &[ComplexNum], z: ComplexNum) -> (ComplexNum, ComplexNum) {
    let mut p = ComplexNum::zero();
    let mut dp = ComplexNum::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `sum |a_k| |z|^k`, the natural scale for the residual `|p(z)|`.
fn magnitude(c: &[ComplexNum], z: ComplexNum) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.norm())
}

/// All complex roots of a squarefree polynomial by Aberth–Ehrlich iteration,
/// started from a slightly perturbed circle. Each returned root `r` satisfies
/// `|p(r)| <= tol * sum |a_k| |r|^k`. Roots are sorted by real part, then
/// imaginary part.
pub fn complex_roots(p: &ExactPoly, tol: f64) -> Result<Vec<ComplexNum>> {
    let n = p.degree().ok_or_else(|| Error::InvalidArgument("zero polynomial has no roots".into()))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::InvalidArgument(format!("{p} is not squarefree")));
    }
    let coeffs: Vec<ComplexNum> = p.to_f64_coeffs().into_iter().map(|x| ComplexNum::new(x, 0.0)).collect();
    let mut roots = complex_roots_f64(&coeffs)?;
    let worst =
        roots.iter().map(|&r| horner_with_derivative(&coeffs, r).0.norm() / magnitude(&coeffs, r)).fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::NoConvergence { iterations: MAX_ITER, residual: worst });
    }
    sort_roots(&mut roots);
    Ok(roots)
}

/// Lexicographic order on (re, im).
pub fn sort_roots(r: &mut [ComplexNum]) {
    r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Aberth–Ehrlich on floating coefficients (constant term first); returns
/// roots in iteration order.
pub fn complex_roots_f64(coeffs: &[ComplexNum]) -> Result<Vec<ComplexNum>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if lead.is_zero() {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let monic: Vec<ComplexNum> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara bound
    let radius = (0..n)
        .map(|k| {
            let e = (n - k) as f64;
            let a = monic[k].norm();
            if k == 0 {
                (a / 2.0).powf(1.0 / e)
            } else {
                a.powf(1.0 / e)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<ComplexNum> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            let r = radius * (0.5 + 0.05 * (k as f64 * 0.7).sin());
            ComplexNum::from_polar(r, angle)
        })
        .collect();
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dp) = horner_with_derivative(&monic, z[k]);
            if pv.is_zero() {
                continue;
            }
            let ratio = pv / dp;
            let repulsion: ComplexNum = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (ComplexNum::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return Err(Error::NonFinite("Aberth step".into()));
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / z[k].norm().max(1e-300));
        }
        residual =
            z.iter().map(|&r| horner_with_derivative(&monic, r).0.norm() / magnitude(&monic, r)).fold(0.0, f64::max);
        if max_step < 1e-15 || residual < 1e-16 {
            for r in z.iter_mut() {
                let (pv, dp) = horner_with_derivative(&monic, *r);
                if !dp.is_zero() {
                    *r -= pv / dp;
                }
            }
            return Ok(z);
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER, residual })
}
