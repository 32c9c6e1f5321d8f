use std::f64::consts::FRAC_PI_2;

use num_traits::{One, Zero};
use serde::Serialize;

use super::quad::composite_rule;
use super::roots::complex_roots;
use crate::algebra::linalg::{complex_inverse, complex_matmul, is_positive_definite, ComplexMatrix};
use crate::algebra::{rational_to_f64, ComplexNum, ExactPoly};
use crate::error::{Error, Result};

/// Numerical settings for period computations.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodOptions {
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    pub panels: usize,
    /// Relative residual accepted for each root.
    pub root_tol: f64,
    /// Minimum distance from a segment to any other root, relative to the
    /// segment length.
    pub clearance: f64,
    /// Accepted asymmetry `max |tau - tau^T|`.
    pub sym_tol: f64,
    /// Recompute with doubled nodes and report the change.
    pub convergence_check: bool,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        PeriodOptions { nodes: 48, panels: 4, root_tol: 1e-12, clearance: 0.1, sym_tol: 1e-8, convergence_check: true }
    }
}

/// Branch points of `y^2 = b(z)` sorted lexicographically and chained into
/// segments `[e_k, e_{k+1}]`; consecutive pairs `(e_{2i}, e_{2i+1})` are the cuts.
#[derive(Clone, Debug)]
pub struct BranchConfiguration {
    roots: Vec<ComplexNum>,
    leading: f64,
    tolerance: f64,
}

impl BranchConfiguration {
    pub fn from_poly(b: &ExactPoly, opts: &PeriodOptions) -> Result<Self> {
        let deg = b.degree().unwrap_or(0);
        if deg < 3 {
            return Err(Error::DegreeTooSmall(format!("branch polynomial of degree {deg}")));
        }
        if deg % 2 == 1 {
            return Err(Error::InvalidArgument("odd degree: infinity is a branch point".into()));
        }
        let roots = complex_roots(b, opts.root_tol)?;
        let leading = rational_to_f64(b.leading().expect("nonzero"));
        let cfg = BranchConfiguration { roots, leading, tolerance: opts.root_tol };
        cfg.check_clearance(opts.clearance)?;
        Ok(cfg)
    }

    pub fn roots(&self) -> &[ComplexNum] {
        &self.roots
    }

    pub fn leading(&self) -> f64 {
        self.leading
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn genus(&self) -> usize {
        self.roots.len() / 2 - 1
    }

    pub fn cuts(&self) -> Vec<(usize, usize)> {
        (0..self.roots.len() / 2).map(|i| (2 * i, 2 * i + 1)).collect()
    }

    fn check_clearance(&self, clearance: f64) -> Result<()> {
        for k in 0..self.roots.len() - 1 {
            let (p, q) = (self.roots[k], self.roots[k + 1]);
            let len = (q - p).norm();
            for (j, &r) in self.roots.iter().enumerate() {
                if j == k || j == k + 1 {
                    continue;
                }
                let s = ((r - p) * (q - p).conj()).re / (len * len);
                let dist = (r - (p + (q - p) * s.clamp(0.0, 1.0))).norm();
                if dist < clearance * len {
                    return Err(Error::TooDegenerate(format!(
                        "configuration too degenerate: root {r} lies {dist:.3e} from segment [{p}, {q}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `int_{e_k}^{e_{k+1}} u(z) dz / y` for each form `u`, on the sheet fixed by
    /// a canonical choice of `sqrt` at `e_k`.
    ///
    /// With `z = mid + hw sin t` the endpoint factors become `-(hw cos t)^2`,
    /// leaving the smooth integrand `u(z) / (i sqrt(lc R(z)))` over
    /// `t in [-pi/2, pi/2]`, where `R` is the product over the other roots.
    pub fn segment_integrals(&self, k: usize, forms: &[Vec<f64>], nodes: usize, panels: usize) -> Vec<ComplexNum> {
        let (p, q) = (self.roots[k], self.roots[k + 1]);
        let mid = (p + q) / 2.0;
        let hw = (q - p) / 2.0;
        let others: Vec<ComplexNum> =
            self.roots.iter().enumerate().filter(|(j, _)| *j != k && *j != k + 1).map(|(_, r)| *r).collect();
        let radicand = |t: f64| {
            let z = mid + hw * t.sin();
            others.iter().fold(ComplexNum::new(self.leading, 0.0), |acc, r| acc * (z - r))
        };
        let (ts, ws) = composite_rule(-FRAC_PI_2, FRAC_PI_2, nodes, panels);
        let mut t_prev = -FRAC_PI_2;
        let mut s_prev = canonical_sqrt(radicand(t_prev));
        let mut out = vec![ComplexNum::zero(); forms.len()];
        for (t, w) in ts.iter().zip(&ws) {
            let s = continue_sqrt(&radicand, t_prev, s_prev, *t, 0);
            let z = mid + hw * t.sin();
            let base = ComplexNum::new(0.0, 1.0) * s;
            for (o, u) in out.iter_mut().zip(forms) {
                let uz = u.iter().rev().fold(ComplexNum::zero(), |acc, c| acc * z + c);
                *o += uz / base * *w;
            }
            t_prev = *t;
            s_prev = s;
        }
        out
    }
}

/// Square root with positive real part, or positive imaginary part when the
/// real part is negligible; stable under small perturbations of real input.
fn canonical_sqrt(v: ComplexNum) -> ComplexNum {
    let s = v.sqrt();
    if s.re.abs() > 1e-8 * s.norm() {
        if s.re < 0.0 {
            -s
        } else {
            s
        }
    } else if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Analytic continuation of `sqrt(f)` from `t0` (value `s0`) to `t1`,
/// halving the step when the phase moves too far.
fn continue_sqrt(f: &dyn Fn(f64) -> ComplexNum, t0: f64, s0: ComplexNum, t1: f64, depth: u32) -> ComplexNum {
    let c = f(t1).sqrt();
    let s = if (c - s0).norm() <= (c + s0).norm() { c } else { -c };
    if depth < 40 && (s - s0).norm() > 0.25 * s0.norm() {
        let tm = (t0 + t1) / 2.0;
        let sm = continue_sqrt(f, t0, s0, tm, depth + 1);
        return continue_sqrt(f, tm, sm, t1, depth + 1);
    }
    s
}

/// `tau` in an a-normalised basis, with the raw periods of the supplied forms.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RiemannMatrix {
    pub tau: ComplexMatrix,
    /// `a_periods[j][i] = int_{a_i} u_j dz / y`.
    pub a_periods: ComplexMatrix,
    pub b_periods: ComplexMatrix,
    pub nodes: usize,
    pub panels: usize,
    /// Largest relative change of any period when the node count is doubled.
    pub quadrature_change: Option<f64>,
    pub symmetry_residual: f64,
    /// Orientation of each loop `gamma_k` around `[e_k, e_{k+1}]`.
    pub signs: Vec<i8>,
}

impl RiemannMatrix {
    pub fn genus(&self) -> usize {
        self.tau.len()
    }

    /// Inverse of the a-period matrix: row `l` gives the coefficients of the
    /// `l`-th normalised form in the input basis.
    pub fn normalising_matrix(&self) -> ComplexMatrix {
        complex_inverse(&self.a_periods).expect("a-periods are invertible")
    }
}

fn monomial_forms(g: usize) -> Vec<ExactPoly> {
    (0..g).map(|j| ExactPoly::monomial(crate::algebra::rat(1, 1), j)).collect()
}

/// Riemann matrix of `y^2 = b(z)` for the forms `z^j dz / y`, `j < g`.
pub fn period_matrix(b: &ExactPoly, opts: &PeriodOptions) -> Result<RiemannMatrix> {
    let cfg = BranchConfiguration::from_poly(b, opts)?;
    period_matrix_for_forms(&cfg, &monomial_forms(cfg.genus()), opts)
}

/// Riemann matrix for an arbitrary basis `u_j(z) dz / y` of holomorphic forms.
///
/// Cycles: `gamma_k` is the loop around `[e_k, e_{k+1}]`; `a_i = gamma_{2i}`
/// and `b_i = gamma_{2i+1} + gamma_{2i+3} + ... + gamma_{2g-1}`. Orientations
/// are chosen as the first sign pattern making `tau` symmetric with positive
/// definite imaginary part.
pub fn period_matrix_for_forms(
    cfg: &BranchConfiguration,
    forms: &[ExactPoly],
    opts: &PeriodOptions,
) -> Result<RiemannMatrix> {
    let g = cfg.genus();
    if !(1..=2).contains(&g) {
        return Err(Error::Unsupported(format!("period matrices are implemented for genus 1 and 2, not {g}")));
    }
    if forms.len() != g || forms.iter().any(|u| u.degree().is_some_and(|d| d + 1 > g)) {
        return Err(Error::InvalidForm(format!("need {g} forms of degree <= {}", g - 1)));
    }
    let coeffs: Vec<Vec<f64>> = forms.iter().map(|u| u.to_f64_coeffs()).collect();
    let gammas = |nodes: usize| -> Vec<Vec<ComplexNum>> {
        (0..2 * g)
            .map(|k| cfg.segment_integrals(k, &coeffs, nodes, opts.panels).into_iter().map(|v| v * 2.0).collect())
            .collect()
    };
    let gamma = gammas(opts.nodes);
    if gamma.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("period integral".into()));
    }
    let quadrature_change = opts.convergence_check.then(|| {
        let fine = gammas(2 * opts.nodes);
        gamma.iter().flatten().zip(fine.iter().flatten()).map(|(a, b)| (a - b).norm() / b.norm()).fold(0.0, f64::max)
    });

    let mut best: Option<(ComplexMatrix, ComplexMatrix, ComplexMatrix, f64, Vec<i8>)> = None;
    for mask in 0..(1u32 << (2 * g - 1)) {
        let signs: Vec<i8> = (0..2 * g).map(|k| if k > 0 && mask >> (k - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let seg = |k: usize, j: usize| gamma[k][j] * f64::from(signs[k]);
        let a: ComplexMatrix = (0..g).map(|j| (0..g).map(|i| seg(2 * i, j)).collect()).collect();
        let b: ComplexMatrix =
            (0..g).map(|j| (0..g).map(|i| (2 * i + 1..2 * g).step_by(2).map(|k| seg(k, j)).sum()).collect()).collect();
        let Some(ainv) = complex_inverse(&a) else { continue };
        let tau = complex_matmul(&ainv, &b);
        let scale = tau.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        let asym = (0..g)
            .flat_map(|i| (0..g).map(move |j| (i, j)))
            .map(|(i, j)| (tau[i][j] - tau[j][i]).norm())
            .fold(0.0, f64::max);
        let im: Vec<Vec<f64>> = tau.iter().map(|r| r.iter().map(|v| v.im).collect()).collect();
        if asym <= 1e-6 * scale.max(1.0) && is_positive_definite(&im) {
            best = Some((tau, a, b, asym, signs));
            break;
        }
    }
    let (tau, a_periods, b_periods, symmetry_residual, signs) = best.ok_or_else(|| {
        Error::TooDegenerate("configuration too degenerate: no cycle orientation gives a Riemann matrix".into())
    })?;
    if symmetry_residual > opts.sym_tol {
        return Err(Error::NoConvergence { iterations: opts.nodes, residual: symmetry_residual });
    }
    Ok(RiemannMatrix {
        tau,
        a_periods,
        b_periods,
        nodes: opts.nodes,
        panels: opts.panels,
        quadrature_change,
        symmetry_residual,
        signs,
    })
}

/// Representative of a genus-one `tau` in the standard fundamental domain.
pub fn reduce_genus_one(mut tau: ComplexNum) -> ComplexNum {
    for _ in 0..200 {
        tau.re -= tau.re.round();
        if tau.norm_sqr() < 1.0 - 1e-14 {
            tau = -ComplexNum::one() / tau;
        } else {
            break;
        }
    }
    tau
}
