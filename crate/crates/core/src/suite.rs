//! Acceptance suite: seven checks, each with a tolerance and a time budget.
//! Random instances come from fixed seeds, so every run is reproducible.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{linalg, rat, ComplexNum, ExactPoly, MultiPoly, Rational};
use crate::cech::DeformationComplex;
use crate::cubic::{
    cubic_eval, cubic_tensor, rational_roots, res2_at_branch, res2_series, res2_series_reparametrised, CameralDataA1,
    HolomorphicForm, LeafTangent,
};
use crate::error::Result;
use crate::hitchin::{cameral_genus, dimension_report, DivisorP1, HiggsFieldP1};
use crate::jets::{jet_equations, parse_system, truncation_check, AffineVariety};
use crate::lie::{Family, TracelessMatrix};
use crate::periods::{
    agm_elliptic_k, calibrate_and_compare, complex_roots, period_matrix, reduce_genus_one, PeriodOptions,
};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({} ms / {} ms) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

fn timed(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (ok, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    CriterionResult {
        id,
        name: name.to_string(),
        passed: ok && within,
        detail: if within { detail } else { format!("{detail}; over time budget") },
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.as_millis(),
    }
}

/// Random polynomial of degree `<= deg` with integer coefficients in `[-r, r]`.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize, r: i64) -> ExactPoly {
    ExactPoly::from_i64s(&(0..=deg).map(|_| rng.gen_range(-r..=r)).collect::<Vec<_>>())
}

/// Random traceless `n x n` Higgs field with entries of degree `<= d - 2`,
/// on the divisor `(d - 1)[q] + [5]`.
pub fn random_higgs(rng: &mut ChaCha8Rng, n: usize, d: u32) -> HiggsFieldP1 {
    let m = d as usize - 2;
    let mut entries: Vec<Vec<ExactPoly>> = (0..n).map(|_| (0..n).map(|_| random_poly(rng, m, 3)).collect()).collect();
    let tr = (0..n - 1).fold(ExactPoly::zero(), |acc, i| acc + entries[i][i].clone());
    entries[n - 1][n - 1] = -tr;
    let q = rat(rng.gen_range(-2..=2), 1);
    let divisor = DivisorP1::new(vec![(q, d - 1), (rat(5, 1), 1)]).expect("distinct points");
    HiggsFieldP1::new(divisor, TracelessMatrix::new(entries).expect("traceless")).expect("degree bound")
}

/// Generic `A_1` data with all branch points rational: `b = prod (z - r_i)`
/// for distinct nonzero integers, on `D = d[0]`.
pub fn random_rational_leaf(rng: &mut ChaCha8Rng, d: u32) -> CameralDataA1 {
    loop {
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < 2 * (d as usize - 2) {
            let r = rng.gen_range(-9..=9);
            if r != 0 && !roots.contains(&r) {
                roots.push(r);
            }
        }
        let b = ExactPoly::from_roots(&roots.iter().map(|&r| rat(r, 1)).collect::<Vec<_>>());
        if let Ok(data) = CameralDataA1::new(b, DivisorP1::single(rat(0, 1), d).expect("valid")) {
            return data;
        }
    }
}

/// Generic `A_1` data with random integer `b` of exact degree `2(d - 2)`.
pub fn random_leaf(rng: &mut ChaCha8Rng, d: u32) -> CameralDataA1 {
    let deg = 2 * (d as usize - 2);
    loop {
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-6..=6)).collect();
        c.push(rng.gen_range(1..=3));
        let b = ExactPoly::from_i64s(&c);
        if let Ok(data) = CameralDataA1::new(b, DivisorP1::single(rat(0, 1), d).expect("valid")) {
            return data;
        }
    }
}

pub fn criterion_dimensions() -> CriterionResult {
    timed(1, "hypercohomology dimension identity", Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        for n in 2..=3usize {
            for d in 2..=6u32 {
                let g = (n * n - 1) as i64;
                let zero = HiggsFieldP1::new(DivisorP1::single(rat(0, 1), d)?, TracelessMatrix::zero(n))?;
                let mut fields = vec![zero];
                fields.extend((0..3).map(|_| random_higgs(&mut rng, n, d)));
                for th in &fields {
                    let r = DeformationComplex::new(th).hyper_dims();
                    let target = g * (d as i64 - 2);
                    if r.euler_neg != target || r.dual_h1 != r.h1 {
                        return Ok((
                            false,
                            format!("A{} d={d}: h = ({}, {}, {}), expected -chi = {target}", n - 1, r.h0, r.h1, r.h2),
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok((true, format!("{checked} fields, h1 - h0 - h2 = dim g (d - 2) exactly")))
    })
}

pub fn criterion_lagrangian() -> CriterionResult {
    timed(2, "cameral genus equals dim B_0", Duration::from_secs(1), || {
        for d in 4..=8usize {
            let genus = cameral_genus(Family::A, 1, d)?.genus;
            let b0 = dimension_report(Family::A, 1, d)?.dim_b0;
            if genus != Some(b0) {
                return Ok((false, format!("d={d}: genus {genus:?} vs dim B_0 {b0}")));
            }
        }
        Ok((true, "d = 4..8".into()))
    })
}

fn random_system(rng: &mut ChaCha8Rng) -> Result<AffineVariety> {
    let nv = rng.gen_range(1..=3);
    let vars: Vec<String> = ["x", "y", "z"][..nv].iter().map(|s| s.to_string()).collect();
    let gens = (0..rng.gen_range(1..=3))
        .map(|_| {
            let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let mut e = vec![0u32; nv];
                    for _ in 0..rng.gen_range(0..=3) {
                        e[rng.gen_range(0..nv)] += 1;
                    }
                    (e, rat(rng.gen_range(-3..=3), 1))
                })
                .collect();
            MultiPoly::from_terms(&vars, terms)
        })
        .collect();
    AffineVariety::new(vars, gens)
}

pub fn criterion_jets() -> CriterionResult {
    timed(3, "jet schemes", Duration::from_secs(5), || {
        for big_n in 1..=3usize {
            let vars: Vec<String> = (1..=big_n).map(|i| format!("x{i}")).collect();
            let space = AffineVariety::affine_space(vars);
            for n in 0..=4 {
                let j = jet_equations(&space, n);
                if j.variables().len() != big_n * (n + 1) || !j.equations().is_empty() {
                    return Ok((false, format!("A^{big_n} at order {n}")));
                }
            }
        }
        let cusp = parse_system("vars x, y; x^2 - y^3")?;
        let eqs: Vec<String> = jet_equations(&cusp, 1).equations().iter().map(|e| e.to_string()).collect();
        if eqs != ["x_0^2 - y_0^3", "2*x_0*x_1 - 3*y_0^2*y_1"] {
            return Ok((false, format!("cusp equations {eqs:?}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let v = random_system(&mut rng)?;
            for n in 1..=4 {
                if !truncation_check(&jet_equations(&v, n), &jet_equations(&v, n - 1))? {
                    return Ok((false, format!("truncation fails at order {n}")));
                }
            }
        }
        Ok((true, "affine spaces, cusp, 40 random systems to order 4".into()))
    })
}

pub fn criterion_duality() -> CriterionResult {
    timed(4, "duality pairing and Poisson skewness", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut ranks = Vec::new();
        for _ in 0..6 {
            let th = random_higgs(&mut rng, 2, 4);
            let dc = DeformationComplex::new(&th);
            let gram = dc.gram_matrix();
            if gram.len() != dc.hyper_dims().h1 || linalg::determinant(&gram).is_zero() {
                return Ok((false, "singular pairing".into()));
            }
            let p = dc.poisson_matrix();
            let skew = (0..p.len()).all(|i| (0..p.len()).all(|j| (&p[i][j] + &p[j][i]).is_zero()));
            if !skew {
                return Ok((false, "Poisson matrix not skew".into()));
            }
            ranks.push(linalg::rank(&p));
        }
        Ok((true, format!("6 instances, 6x6 Gram nonsingular, Poisson ranks {ranks:?}")))
    })
}

pub fn criterion_cubic() -> CriterionResult {
    timed(5, "cubic consistency", Duration::from_secs(10), || {
        let one = ExactPoly::one();
        let reference = CameralDataA1::new(ExactPoly::from_i64s(&[4, 0, -5, 0, 1]), DivisorP1::single(rat(0, 1), 4)?)?;
        let z4 = ExactPoly::monomial(rat(1, 1), 4);
        let xi = LeafTangent::new(z4, &reference)?;
        let unit = HolomorphicForm::new(one.clone(), &reference)?;
        let value = cubic_eval(&reference, &xi, &unit, &unit)?;
        if value != rat(5, 9) {
            return Ok((false, format!("reference value {value}")));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut exact_points = 0;
        let mut float_err: f64 = 0.0;
        for d in [4u32, 5, 6] {
            for _ in 0..2 {
                let data = random_rational_leaf(&mut rng, d);
                let g = data.genus();
                let bdot = &data.tangent_basis()[rng.gen_range(0..g)] * &random_poly(&mut rng, 0, 3);
                let (u, v) = (random_poly(&mut rng, g - 1, 3), random_poly(&mut rng, g - 1, 3));
                for c in rational_roots(data.b()).expect("rational by construction") {
                    let closed = res2_at_branch(&data, &bdot, &u, &v, &c)?;
                    if res2_series(&data, &bdot, &u, &v, &c)? != closed
                        || res2_series_reparametrised(&data, &bdot, &u, &v, &c)? != closed
                    {
                        return Ok((false, format!("series mismatch at {c} for b = {}", data.b())));
                    }
                    exact_points += 1;
                }
                let data = random_leaf(&mut rng, d);
                let db = data.b().derivative();
                let num = &(&bdot * &u) * &v;
                for c in complex_roots(data.b(), 1e-12)? {
                    let closed: ComplexNum = num.eval_f64(c) * 4.0 / db.eval_f64(c).powu(2);
                    let scale = closed.norm().max(1.0);
                    float_err = float_err
                        .max((res2_series(&data, &bdot, &u, &v, &c)? - closed).norm() / scale)
                        .max((res2_series_reparametrised(&data, &bdot, &u, &v, &c)? - closed).norm() / scale);
                }
            }
        }
        if float_err > 1e-12 {
            return Ok((false, format!("float series error {float_err:e}")));
        }
        for d in [5u32, 6] {
            for _ in 0..4 {
                if !cubic_tensor(&random_leaf(&mut rng, d))?.is_symmetric() {
                    return Ok((false, format!("asymmetric tensor at d={d}")));
                }
            }
        }
        Ok((
            true,
            format!(
                "reference 5/9; {exact_points} exact branch points; float error {float_err:.1e}; tensors symmetric"
            ),
        ))
    })
}

fn jacobi_quartic(k: &Rational) -> ExactPoly {
    let k2 = k * k;
    ExactPoly::new(vec![Rational::one(), Rational::zero(), -(Rational::one() + &k2), Rational::zero(), k2])
}

pub fn criterion_periods() -> CriterionResult {
    timed(6, "period oracle", Duration::from_secs(30), || {
        let opts = PeriodOptions::default();
        let k = 0.5f64;
        let rm = period_matrix(&jacobi_quartic(&rat(1, 2)), &opts)?;
        let kk = agm_elliptic_k(k)?;
        let kp = agm_elliptic_k((1.0 - k * k).sqrt())?;
        // lattice of dz/y on (1 - z^2)(1 - k^2 z^2) is 4K Z + 2iK' Z
        let expected = reduce_genus_one(ComplexNum::new(0.0, kp / (2.0 * kk)));
        let got = reduce_genus_one(rm.tau[0][0]);
        let rel = (got - expected).norm() / expected.norm();
        let square = reduce_genus_one(period_matrix(&ExactPoly::from_i64s(&[-1, 0, 0, 0, 1]), &opts)?.tau[0][0]);
        let square_err = (square - ComplexNum::new(0.0, 1.0)).norm();
        let genus_two = [
            ExactPoly::from_roots(&[-3, -2, -1, 1, 2, 4].map(|r| rat(r, 1))),
            ExactPoly::from_i64s(&[3, 1, 0, -2, 1, 0, 1]),
        ];
        let mut worst_sym: f64 = rm.symmetry_residual;
        for b in &genus_two {
            let m = period_matrix(b, &opts)?;
            worst_sym = worst_sym.max(m.symmetry_residual);
        }
        let ok = rel <= 1e-8 && square_err <= 1e-6 && worst_sym <= 1e-8;
        Ok((ok, format!("k=1/2 rel err {rel:.1e}; z^4-1 err {square_err:.1e}; max asymmetry {worst_sym:.1e}")))
    })
}

pub fn criterion_period_derivative() -> CriterionResult {
    timed(7, "period derivative matches cubic", Duration::from_secs(600), || {
        let leaf = |roots: &[i64], d: u32| -> Result<CameralDataA1> {
            let b = ExactPoly::from_roots(&roots.iter().map(|&r| rat(r, 1)).collect::<Vec<_>>());
            CameralDataA1::new(b, DivisorP1::single(rat(0, 1), d)?)
        };
        let leaves = [
            leaf(&[-2, -1, 1, 2], 4)?,
            leaf(&[-3, -1, 1, 4], 4)?,
            leaf(&[-5, -2, 1, 3], 4)?,
            leaf(&[-3, -2, -1, 1, 2, 4], 5)?,
        ];
        let rep = calibrate_and_compare(&leaves, &rat(1, 1000), &PeriodOptions::default())?;
        let g2 = rep.instances.iter().find(|r| r.genus == 2).expect("genus-two leaf");
        let ok = rep.genus_one_spread <= 1e-3 && g2.symmetry_residual <= 1e-4 && rep.higher_genus_deviation <= 1e-3;
        Ok((
            ok,
            format!(
                "constant {:.10}{:+.10}i; genus-1 spread {:.1e}; genus-2 asymmetry {:.1e}, deviation {:.1e}",
                rep.constant.re,
                rep.constant.im,
                rep.genus_one_spread,
                g2.symmetry_residual,
                rep.higher_genus_deviation
            ),
        ))
    })
}

pub fn run_suite() -> SuiteReport {
    let criteria = vec![
        criterion_dimensions(),
        criterion_lagrangian(),
        criterion_jets(),
        criterion_duality(),
        criterion_cubic(),
        criterion_periods(),
        criterion_period_derivative(),
    ];
    let all_passed = criteria.iter().all(|c| c.passed);
    SuiteReport { criteria, all_passed }
}
