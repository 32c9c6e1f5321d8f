//! Finite differences of `tau` along `b + beta bdot` and comparison with the
//! exact cubic in the a-normalised basis.

use num_traits::{One, Zero};
use serde::Serialize;

use super::riemann::{period_matrix, PeriodOptions, RiemannMatrix};
use super::roots::complex_roots;
use crate::algebra::linalg::ComplexMatrix;
use crate::algebra::{rational_to_f64, ComplexNum, ExactPoly, Rational};
use crate::cubic::{cubic_tensor, CameralDataA1};
use crate::error::{Error, Result};

/// Central differences `(tau(h) - tau(-h)) / 2h` at `h` and `h/2`, and their
/// Richardson combination `(4 D(h/2) - D(h)) / 3`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FdResult {
    pub step: f64,
    pub coarse: ComplexMatrix,
    pub fine: ComplexMatrix,
    pub richardson: ComplexMatrix,
    /// `max |D(h/2) - R|`, an estimate of the error of `D(h/2)`.
    pub error_estimate: f64,
}

fn perturbed_tau(
    data: &CameralDataA1,
    bdot: &ExactPoly,
    beta: &Rational,
    opts: &PeriodOptions,
) -> Result<RiemannMatrix> {
    let moved = data.perturbed(bdot, beta).map_err(|e| Error::StepTooLarge(format!("at beta = {beta}: {e}")))?;
    period_matrix(moved.b(), opts)
}

fn min_separation(roots: &[ComplexNum]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

pub fn dtau_fd(data: &CameralDataA1, bdot: &ExactPoly, h: &Rational, opts: &PeriodOptions) -> Result<FdResult> {
    if h <= &Rational::zero() {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let g = data.genus();
    let hf = rational_to_f64(h);
    if bdot.is_zero() {
        let zero = vec![vec![ComplexNum::zero(); g]; g];
        return Ok(FdResult {
            step: hf,
            coarse: zero.clone(),
            fine: zero.clone(),
            richardson: zero,
            error_estimate: 0.0,
        });
    }
    let base = complex_roots(data.b(), opts.root_tol)?;
    let sep = min_separation(&base);
    for beta in [h.clone(), -h.clone()] {
        let moved = complex_roots(&(data.b() + &bdot.scale(&beta)), opts.root_tol)?;
        let shift = base.iter().zip(&moved).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if shift > 0.1 * sep {
            return Err(Error::StepTooLarge(format!("branch points move {shift:.3e}, separation {sep:.3e}")));
        }
    }
    let opts = PeriodOptions { convergence_check: false, ..opts.clone() };
    let central = |step: &Rational| -> Result<ComplexMatrix> {
        let plus = perturbed_tau(data, bdot, step, &opts)?;
        let minus = perturbed_tau(data, bdot, &-step.clone(), &opts)?;
        let s = 2.0 * rational_to_f64(step);
        Ok((0..g).map(|i| (0..g).map(|j| (plus.tau[i][j] - minus.tau[i][j]) / s).collect()).collect())
    };
    let coarse = central(h)?;
    let fine = central(&(h / Rational::from_integer(2.into())))?;
    let richardson: ComplexMatrix =
        (0..g).map(|i| (0..g).map(|j| (fine[i][j] * 4.0 - coarse[i][j]) / 3.0).collect()).collect();
    let error_estimate = (0..g)
        .flat_map(|i| (0..g).map(move |j| (i, j)))
        .map(|(i, j)| (fine[i][j] - richardson[i][j]).norm())
        .fold(0.0, f64::max);
    Ok(FdResult { step: hf, coarse, fine, richardson, error_estimate })
}

/// One leaf: the FD tensor and exact cubic, both in the a-normalised basis.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceReport {
    pub b: String,
    pub genus: usize,
    /// `fd[i][j][k] = d tau_jk / d beta_i` for the normalised direction `i`.
    pub fd: Vec<ComplexMatrix>,
    pub cubic: Vec<ComplexMatrix>,
    /// Least-squares `kappa` with `fd ~ kappa * cubic`.
    pub ratio: ComplexNum,
    /// `max |fd - kappa cubic| / max |fd|`.
    pub fit_residual: f64,
    /// `max |fd_ijk - fd_sigma(ijk)| / max |fd|` over all permutations.
    pub symmetry_residual: f64,
    pub fd_error_estimate: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CalibrationReport {
    pub instances: Vec<InstanceReport>,
    /// Mean genus-one ratio.
    pub constant: ComplexNum,
    /// Largest pairwise `|r_i - r_j| / |constant|` among genus-one instances.
    pub genus_one_spread: f64,
    /// Largest `|r - constant| / |constant|` among higher-genus instances.
    pub higher_genus_deviation: f64,
}

fn tensor_max(t: &[ComplexMatrix]) -> f64 {
    t.iter().flatten().flatten().map(|v| v.norm()).fold(0.0, f64::max)
}

fn symmetry_residual(t: &[ComplexMatrix]) -> f64 {
    let g = t.len();
    let mut worst: f64 = 0.0;
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                let e = t[i][j][k];
                for other in [t[i][k][j], t[j][i][k], t[j][k][i], t[k][i][j], t[k][j][i]] {
                    worst = worst.max((e - other).norm());
                }
            }
        }
    }
    worst / tensor_max(t).max(f64::MIN_POSITIVE)
}

/// Compares the FD derivative of `tau` with the cubic tensor on one leaf.
///
/// With `C = A^{-1}` (rows give the normalised forms in the monomial basis),
/// the normalised direction `i` is `sum_p C_ip bdot_p`, so
/// `fd[i][j][k] = sum_p C_ip d tau_jk / d beta_p` and
/// `cubic[i][j][k] = sum C_ip C_jq C_kr T[p][q][r]`.
pub fn compare_instance(data: &CameralDataA1, h: &Rational, opts: &PeriodOptions) -> Result<InstanceReport> {
    let g = data.genus();
    if g == 0 {
        return Err(Error::InvalidArgument("genus-zero leaf has no periods".into()));
    }
    let rm = period_matrix(data.b(), opts)?;
    let c = rm.normalising_matrix();
    let mut raw = Vec::with_capacity(g);
    let mut err: f64 = 0.0;
    for bdot in data.tangent_basis() {
        let r = dtau_fd(data, &bdot, h, opts)?;
        err = err.max(r.error_estimate);
        raw.push(r.richardson);
    }
    let t = cubic_tensor(data)?;
    let tf = t.to_f64();
    let idx = |p: usize, q: usize, r: usize| tf[(p * g + q) * g + r];
    let zero = ComplexNum::zero();
    let mut fd = vec![vec![vec![zero; g]; g]; g];
    let mut cubic = vec![vec![vec![zero; g]; g]; g];
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                fd[i][j][k] = (0..g).map(|p| c[i][p] * raw[p][j][k]).sum();
                let mut acc = zero;
                for p in 0..g {
                    for q in 0..g {
                        for r in 0..g {
                            acc += c[i][p] * c[j][q] * c[k][r] * idx(p, q, r);
                        }
                    }
                }
                cubic[i][j][k] = acc;
            }
        }
    }
    let flat_fd: Vec<ComplexNum> = fd.iter().flatten().flatten().copied().collect();
    let flat_cu: Vec<ComplexNum> = cubic.iter().flatten().flatten().copied().collect();
    let denom: f64 = flat_cu.iter().map(|v| v.norm_sqr()).sum();
    if denom == 0.0 {
        return Err(Error::InvalidArgument("cubic vanishes identically on this leaf".into()));
    }
    let ratio = flat_cu.iter().zip(&flat_fd).map(|(c, f)| c.conj() * f).sum::<ComplexNum>() / denom;
    let scale = tensor_max(&fd);
    let fit_residual = flat_fd.iter().zip(&flat_cu).map(|(f, c)| (f - ratio * c).norm()).fold(0.0, f64::max)
        / scale.max(f64::MIN_POSITIVE);
    Ok(InstanceReport {
        b: data.b().to_string(),
        genus: g,
        symmetry_residual: symmetry_residual(&fd),
        fd,
        cubic,
        ratio,
        fit_residual,
        fd_error_estimate: err,
    })
}

/// Runs [`compare_instance`] on every leaf and measures how far the ratios
/// are from a single constant.
pub fn calibrate_and_compare(
    instances: &[CameralDataA1],
    h: &Rational,
    opts: &PeriodOptions,
) -> Result<CalibrationReport> {
    let reports: Vec<InstanceReport> = instances.iter().map(|d| compare_instance(d, h, opts)).collect::<Result<_>>()?;
    let ones: Vec<ComplexNum> = reports.iter().filter(|r| r.genus == 1).map(|r| r.ratio).collect();
    if ones.len() < 2 {
        return Err(Error::InvalidArgument("calibration needs at least two genus-one leaves".into()));
    }
    let constant = ones.iter().sum::<ComplexNum>() / ones.len() as f64;
    let mut spread: f64 = 0.0;
    for a in &ones {
        for b in &ones {
            spread = spread.max((a - b).norm() / constant.norm());
        }
    }
    let higher = reports
        .iter()
        .filter(|r| r.genus > 1)
        .map(|r| (r.ratio - constant).norm() / constant.norm())
        .fold(0.0, f64::max);
    let _ = ComplexNum::one();
    Ok(CalibrationReport { instances: reports, constant, genus_one_spread: spread, higher_genus_deviation: higher })
}
