//! Two-chart Čech model of the deformation complex `ad P -> ad P ⊗ K(D)` of a
//! trivial-bundle Higgs pair on the projective line, its Serre dual
//! `ad P(-D) -> ad P ⊗ K`, the explicit duality pairing between their first
//! hypercohomologies, and the Poisson map induced by `O(-D) -> O`.
//!
//! Charts are `U_0 = {z != inf}` and `U_1 = {z != 0}`; every cochain is a
//! Laurent polynomial in `z` with `sl_n` coefficients, written in a fixed
//! frame for each bundle:
//!
//! | bundle      | frame          | allowed exponents on `U_1` |
//! |-------------|----------------|----------------------------|
//! | `O`         | `1`            | `<= 0`                     |
//! | `K(D)`      | `dz / delta_D` | `<= d - 2`                 |
//! | `O(-D)`     | `delta_D`      | `<= -d`                    |
//! | `K`         | `dz`           | `<= -2`                    |
//!
//! On `U_0` every frame is a generator, so exponents must be `>= 0`. The class
//! of a 1-cocycle of `K` is the coefficient of `dz / z`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::linalg::{self, RatMatrix};
use crate::algebra::{ExactPoly, Rational};
use crate::error::{Error, Result};
use crate::hitchin::{HiggsFieldP1, LineBundleP1};
use crate::lie::{sl_basis, TracelessMatrix};

type Mat = Vec<Vec<Rational>>;

fn mat_zero(n: usize) -> Mat {
    vec![vec![Rational::zero(); n]; n]
}

fn mat_is_zero(a: &Mat) -> bool {
    a.iter().flatten().all(Zero::is_zero)
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn mat_scale(a: &Mat, c: &Rational) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    mat_add(&ab, &mat_scale(&ba, &-Rational::one()))
}

fn trace_product(a: &Mat, b: &Mat) -> Rational {
    let n = a.len();
    (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| &a[i][k] * &b[k][i]).sum()
}

/// Coordinates of a traceless matrix in [`sl_basis`].
fn sl_coords(a: &Mat) -> Vec<Rational> {
    let n = a.len();
    let mut out = Vec::with_capacity(n * n - 1);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                out.push(x.clone());
            }
        }
    }
    let mut partial = Rational::zero();
    for (i, row) in a.iter().enumerate().take(n - 1) {
        partial += &row[i];
        out.push(partial.clone());
    }
    out
}

/// Laurent polynomial in `z` with `n x n` rational matrix coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatLaurent {
    n: usize,
    terms: BTreeMap<i64, Mat>,
}

impl MatLaurent {
    pub fn zero(n: usize) -> Self {
        MatLaurent { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (i64, Mat)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (k, m) in terms {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidArgument(format!("coefficient of z^{k} is not {n}x{n}")));
            }
            out.add_term(k, m);
        }
        Ok(out)
    }

    /// `a * z^k`.
    pub fn monomial(a: Mat, k: i64) -> Self {
        let n = a.len();
        let mut out = Self::zero(n);
        out.add_term(k, a);
        out
    }

    /// Matrix of polynomials read as a Laurent polynomial.
    pub fn from_matrix(m: &TracelessMatrix) -> Self {
        let n = m.size();
        let top = m.max_degree().unwrap_or(0);
        let terms = (0..=top).map(|k| {
            let c: Mat = (0..n).map(|i| (0..n).map(|j| m.entry(i, j).coeff(k)).collect()).collect();
            (k as i64, c)
        });
        Self::from_terms(n, terms).expect("square by construction")
    }

    fn add_term(&mut self, k: i64, m: Mat) {
        let v = match self.terms.remove(&k) {
            Some(old) => mat_add(&old, &m),
            None => m,
        };
        if !mat_is_zero(&v) {
            self.terms.insert(k, v);
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<i64, Mat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Mat {
        self.terms.get(&k).cloned().unwrap_or_else(|| mat_zero(self.n))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &other.terms {
            out.add_term(*k, m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, m) in &self.terms {
            out.add_term(*k, mat_scale(m, c));
        }
        out
    }

    /// Product with a scalar polynomial in `z`.
    pub fn mul_poly(&self, p: &ExactPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (j, c) in p.coeffs().iter().enumerate() {
            for (k, m) in &self.terms {
                out.add_term(k + j as i64, mat_scale(m, c));
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, commutator(a, b));
            }
        }
        out
    }

    /// Scalar Laurent polynomial `Tr(self * other)`, keyed by exponent.
    pub fn trace_pairing(&self, other: &Self) -> BTreeMap<i64, Rational> {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                *out.entry(i + j).or_insert_with(Rational::zero) += trace_product(a, b);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Splits into the parts with exponents `<= k` and `> k`.
    pub fn split_at(&self, k: i64) -> (Self, Self) {
        let mut low = Self::zero(self.n);
        let mut high = Self::zero(self.n);
        for (e, m) in &self.terms {
            if *e <= k {
                low.terms.insert(*e, m.clone());
            } else {
                high.terms.insert(*e, m.clone());
            }
        }
        (low, high)
    }

    fn is_traceless(&self) -> bool {
        self.terms.values().all(|m| (0..self.n).map(|i| m[i][i].clone()).sum::<Rational>().is_zero())
    }
}

/// Which complex a 1-hypercocycle belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleKind {
    /// `ad P -> ad P ⊗ K(D)`: tangent vectors to the moduli space.
    Tangent,
    /// `ad P(-D) -> ad P ⊗ K`: cotangent vectors.
    Cotangent,
}

/// Čech 1-hypercocycle `(c_01, c_0, c_1)`: a cochain of the first sheaf on the
/// overlap plus cochains of the second sheaf on each chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCocycle {
    pub kind: CocycleKind,
    pub overlap: MatLaurent,
    pub chart0: MatLaurent,
    pub chart1: MatLaurent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HyperCohomologyReport {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// `-chi = h1 - h0 - h2`.
    pub euler_neg: i64,
    /// `dim g * deg K(D)`.
    pub expected_euler_neg: i64,
    /// First hypercohomology of the dual complex, computed independently.
    pub dual_h1: usize,
}

/// Deformation complex of a fixed Higgs field.
#[derive(Clone, Debug)]
pub struct DeformationComplex {
    n: usize,
    twist: i64,
    degree: i64,
    delta: ExactPoly,
    theta: MatLaurent,
    basis: Vec<Mat>,
}

impl DeformationComplex {
    pub fn new(theta: &HiggsFieldP1) -> Self {
        let n = theta.size();
        DeformationComplex {
            n,
            twist: theta.twist() as i64,
            degree: theta.divisor().degree() as i64,
            delta: theta.divisor().delta(),
            theta: MatLaurent::from_matrix(theta.matrix()),
            basis: sl_basis(n),
        }
    }

    pub fn dim_g(&self) -> usize {
        self.basis.len()
    }

    /// Upper exponent bound on `U_1` for the chart sheaves of each complex.
    fn chart_bound(&self, kind: CocycleKind) -> i64 {
        match kind {
            CocycleKind::Tangent => self.twist,
            CocycleKind::Cotangent => -2,
        }
    }

    /// Upper exponent bound on `U_1` for the overlap sheaf of each complex.
    fn overlap_bound(&self, kind: CocycleKind) -> i64 {
        match kind {
            CocycleKind::Tangent => 0,
            CocycleKind::Cotangent => -self.degree,
        }
    }

    /// `x -> [theta, x]` from `g` to `g ⊗ H^0(O(m))`, one column per basis element.
    fn ad_theta_matrix(&self) -> RatMatrix {
        let rows = self.dim_g() * (self.twist as usize + 1);
        let mut m = vec![vec![Rational::zero(); self.dim_g()]; rows];
        for (a, e) in self.basis.iter().enumerate() {
            let img = self.theta.bracket(&MatLaurent::monomial(e.clone(), 0));
            for (k, c) in img.terms() {
                for (b, x) in sl_coords(c).into_iter().enumerate() {
                    m[*k as usize * self.dim_g() + b][a] = x;
                }
            }
        }
        m
    }

    /// Residue map `sigma -> coeff_{z^-1} [theta, sigma]` on the tails
    /// `sigma = sum_{k=1}^{d-1} sigma_k z^{-k}` that represent `H^1(g ⊗ O(-D))`.
    fn residue_matrix(&self) -> RatMatrix {
        let g = self.dim_g();
        let tails = (self.degree - 1) as usize;
        let mut m = vec![vec![Rational::zero(); g * tails]; g];
        for k in 1..=tails {
            let th = self.theta.coeff(k as i64 - 1);
            for (a, e) in self.basis.iter().enumerate() {
                for (b, x) in sl_coords(&commutator(&th, e)).into_iter().enumerate() {
                    m[b][(k - 1) * g + a] = x;
                }
            }
        }
        m
    }

    pub fn hyper_dims(&self) -> HyperCohomologyReport {
        let g = self.dim_g();
        let r = linalg::rank(&self.ad_theta_matrix());
        // H^1(ad P) = 0 and H^1(ad P ⊗ K(D)) = 0 on genus 0 for deg K(D) >= -1
        debug_assert_eq!(LineBundleP1 { degree: self.twist }.h1(), 0);
        let h0 = g - r;
        let h1 = g * (self.twist as usize + 1) - r;
        let h2 = 0;
        let tails = g * (self.degree as usize - 1);
        let dual_h1 = tails - linalg::rank(&self.residue_matrix());
        HyperCohomologyReport {
            h0,
            h1,
            h2,
            euler_neg: h1 as i64 - h0 as i64 - h2 as i64,
            expected_euler_neg: g as i64 * self.twist,
            dual_h1,
        }
    }

    /// Checks chart holomorphy, tracelessness and the cocycle condition
    /// `c_1 - c_0 = [theta, c_01]`.
    pub fn validate(&self, c: &HyperCocycle) -> Result<()> {
        let parts = [&c.overlap, &c.chart0, &c.chart1];
        if parts.iter().any(|p| p.size() != self.n) {
            return Err(Error::CocycleViolation(format!("coefficients must be {0}x{0}", self.n)));
        }
        if parts.iter().any(|p| !p.is_traceless()) {
            return Err(Error::CocycleViolation("coefficients must be traceless".into()));
        }
        if c.chart0.min_exp().is_some_and(|k| k < 0) {
            return Err(Error::CocycleViolation("chart-0 cochain has a pole at z = 0".into()));
        }
        let bound = self.chart_bound(c.kind);
        if c.chart1.max_exp().is_some_and(|k| k > bound) {
            return Err(Error::CocycleViolation(format!(
                "chart-1 cochain has exponent above {bound} (pole at infinity)"
            )));
        }
        let defect = c.chart1.sub(&c.chart0).sub(&self.theta.bracket(&c.overlap));
        if !defect.is_zero() {
            return Err(Error::CocycleViolation("c_1 - c_0 != [theta, c_01]".into()));
        }
        Ok(())
    }

    /// Hypercoboundary of the 0-cochain `(x_0, x_1)`:
    /// `(x_1 - x_0, [theta, x_0], [theta, x_1])`.
    pub fn coboundary(&self, kind: CocycleKind, x0: &MatLaurent, x1: &MatLaurent) -> Result<HyperCocycle> {
        if x0.min_exp().is_some_and(|k| k < 0) || x1.max_exp().is_some_and(|k| k > self.overlap_bound(kind)) {
            return Err(Error::InvalidArgument("0-cochain is not holomorphic on its chart".into()));
        }
        Ok(HyperCocycle { kind, overlap: x1.sub(x0), chart0: self.theta.bracket(x0), chart1: self.theta.bracket(x1) })
    }

    /// Representatives `(0, t, t)` of a basis of `H^1` of the deformation
    /// complex: global sections `t` spanning a complement of `[theta, g]`.
    pub fn tangent_basis(&self) -> Vec<HyperCocycle> {
        let g = self.dim_g();
        let mut img = linalg::transpose(&self.ad_theta_matrix());
        let pivots = linalg::rref(&mut img);
        let total = g * (self.twist as usize + 1);
        (0..total)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let t = MatLaurent::monomial(self.basis[c % g].clone(), (c / g) as i64);
                HyperCocycle {
                    kind: CocycleKind::Tangent,
                    overlap: MatLaurent::zero(self.n),
                    chart0: t.clone(),
                    chart1: t,
                }
            })
            .collect()
    }

    /// Representatives of a basis of `H^1` of the dual complex: tails `sigma`
    /// in the kernel of the residue map, completed by
    /// `[theta, sigma] = tau_1 - tau_0`.
    pub fn cotangent_basis(&self) -> Vec<HyperCocycle> {
        let g = self.dim_g();
        let tails = (self.degree - 1) as usize;
        linalg::nullspace(&self.residue_matrix(), g * tails)
            .into_iter()
            .map(|v| {
                let mut sigma = MatLaurent::zero(self.n);
                for (idx, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let k = -((idx / g) as i64 + 1);
                        sigma.add_term(k, mat_scale(&self.basis[idx % g], x));
                    }
                }
                self.complete_cotangent(sigma).expect("kernel of the residue map splits")
            })
            .collect()
    }

    /// Completes an overlap cochain of `g ⊗ O(-D)` to a cotangent cocycle,
    /// when the residue obstruction vanishes.
    pub fn complete_cotangent(&self, sigma: MatLaurent) -> Result<HyperCocycle> {
        let x = self.theta.bracket(&sigma);
        if !mat_is_zero(&x.coeff(-1)) {
            return Err(Error::CocycleViolation("residue of [theta, sigma] does not vanish".into()));
        }
        let (low, high) = x.split_at(-1);
        Ok(HyperCocycle {
            kind: CocycleKind::Cotangent,
            overlap: sigma,
            chart0: high.scale(&-Rational::one()),
            chart1: low,
        })
    }

    /// Completes an overlap cochain of `g ⊗ O` plus a global section `u` of
    /// `g ⊗ K(D)` to a tangent cocycle.
    pub fn complete_tangent(&self, s: MatLaurent, u: MatLaurent) -> Result<HyperCocycle> {
        if u.min_exp().is_some_and(|k| k < 0) || u.max_exp().is_some_and(|k| k > self.twist) {
            return Err(Error::InvalidArgument("u is not a global section of K(D)".into()));
        }
        let x = self.theta.bracket(&s);
        let (low, high) = x.split_at(self.twist);
        Ok(HyperCocycle { kind: CocycleKind::Tangent, overlap: s, chart0: u.sub(&high), chart1: u.add(&low) })
    }

    /// `<alpha, beta> = Res (Tr(t_0 sigma_01) - Tr(s_01 tau_1))`, with the
    /// residue read as the coefficient of `dz / z`.
    pub fn duality_pair(&self, alpha: &HyperCocycle, beta: &HyperCocycle) -> Result<Rational> {
        if alpha.kind != CocycleKind::Tangent || beta.kind != CocycleKind::Cotangent {
            return Err(Error::InvalidArgument("pairing takes (tangent, cotangent)".into()));
        }
        self.validate(alpha)?;
        self.validate(beta)?;
        let first = alpha.chart0.trace_pairing(&beta.overlap);
        let second = alpha.overlap.trace_pairing(&beta.chart1);
        let get = |m: &BTreeMap<i64, Rational>| m.get(&-1).cloned().unwrap_or_else(Rational::zero);
        Ok(get(&first) - get(&second))
    }

    /// Image under `O(-D) -> O`: every component is multiplied by `delta_D`,
    /// which carries the dual complex into the deformation complex.
    pub fn poisson_apply(&self, beta: &HyperCocycle) -> Result<HyperCocycle> {
        if beta.kind != CocycleKind::Cotangent {
            return Err(Error::InvalidArgument("Poisson map takes a cotangent cocycle".into()));
        }
        self.validate(beta)?;
        let out = HyperCocycle {
            kind: CocycleKind::Tangent,
            overlap: beta.overlap.mul_poly(&self.delta),
            chart0: beta.chart0.mul_poly(&self.delta),
            chart1: beta.chart1.mul_poly(&self.delta),
        };
        debug_assert!(self.validate(&out).is_ok());
        Ok(out)
    }

    /// Pairing matrix between [`Self::tangent_basis`] and [`Self::cotangent_basis`].
    pub fn gram_matrix(&self) -> RatMatrix {
        let tb = self.tangent_basis();
        let cb = self.cotangent_basis();
        tb.iter().map(|a| cb.iter().map(|b| self.duality_pair(a, b).expect("basis cocycles")).collect()).collect()
    }

    /// `P_ij = <Psi beta_i, beta_j>` on the cotangent basis.
    pub fn poisson_matrix(&self) -> RatMatrix {
        let cb = self.cotangent_basis();
        let images: Vec<HyperCocycle> = cb.iter().map(|b| self.poisson_apply(b).expect("basis cocycle")).collect();
        images.iter().map(|a| cb.iter().map(|b| self.duality_pair(a, b).expect("valid cocycles")).collect()).collect()
    }
}

/// `(h^0, h^1)` of `O(k)` on the projective line.
pub fn line_cohomology(k: i64) -> (usize, usize) {
    let l = LineBundleP1 { degree: k };
    (l.h0(), l.h1())
}

/// Free-function form of [`DeformationComplex::hyper_dims`].
pub fn hyper_dims(theta: &HiggsFieldP1) -> HyperCohomologyReport {
    DeformationComplex::new(theta).hyper_dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::hitchin::DivisorP1;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    fn companion(b: ExactPoly, d: u32) -> HiggsFieldP1 {
        let o = ExactPoly::zero;
        let m = TracelessMatrix::new(vec![vec![o(), ExactPoly::one()], vec![b, o()]]).unwrap();
        HiggsFieldP1::new(DivisorP1::single(rat(0, 1), d).unwrap(), m).unwrap()
    }

    #[test]
    fn line_cohomology_examples() {
        assert_eq!(line_cohomology(0), (1, 0));
        assert_eq!(line_cohomology(-2), (0, 1));
        assert_eq!(line_cohomology(3), (4, 0));
        assert_eq!(line_cohomology(-1), (0, 0));
    }

    #[test]
    fn hyper_dims_examples() {
        let r = hyper_dims(&companion(p(&[4, 0, -5]), 4));
        assert_eq!((r.h0, r.h1, r.h2), (0, 6, 0));
        assert_eq!(r.dual_h1, 6);

        let zero = HiggsFieldP1::new(DivisorP1::single(rat(0, 1), 4).unwrap(), TracelessMatrix::zero(2)).unwrap();
        let r = hyper_dims(&zero);
        assert_eq!((r.h0, r.h1, r.h2, r.euler_neg), (3, 9, 0, 6));

        // constant regular nilpotent on O(0)
        let o = ExactPoly::zero;
        let m = TracelessMatrix::new(vec![vec![o(), ExactPoly::one()], vec![o(), o()]]).unwrap();
        let th = HiggsFieldP1::new(DivisorP1::new(vec![(rat(0, 1), 1), (rat(1, 1), 1)]).unwrap(), m).unwrap();
        let r = hyper_dims(&th);
        assert_eq!((r.h0, r.h1, r.h2, r.euler_neg), (1, 1, 0, 0));
    }

    #[test]
    fn gram_is_nonsingular_for_generic_field() {
        let dc = DeformationComplex::new(&companion(p(&[4, 0, -5]), 4));
        let g = dc.gram_matrix();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|r| r.len() == 6));
        assert!(!linalg::determinant(&g).is_zero());
    }

    #[test]
    fn zero_pairs_to_zero() {
        let dc = DeformationComplex::new(&companion(p(&[4, 0, -5]), 4));
        let z = MatLaurent::zero(2);
        let a = HyperCocycle { kind: CocycleKind::Tangent, overlap: z.clone(), chart0: z.clone(), chart1: z.clone() };
        let b = HyperCocycle { kind: CocycleKind::Cotangent, ..a.clone() };
        assert!(dc.duality_pair(&a, &b).unwrap().is_zero());
        assert_eq!(dc.poisson_apply(&b).unwrap(), a);
    }

    #[test]
    fn residue_normalisation() {
        // theta = 0, t = E_12 (global), sigma = E_21 z^{-1}: Tr(E_12 E_21) dz/z
        let th = HiggsFieldP1::new(DivisorP1::single(rat(0, 1), 3).unwrap(), TracelessMatrix::zero(2)).unwrap();
        let dc = DeformationComplex::new(&th);
        let e12 = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]];
        let e21 = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]];
        let t = MatLaurent::monomial(e12, 0);
        let alpha =
            HyperCocycle { kind: CocycleKind::Tangent, overlap: MatLaurent::zero(2), chart0: t.clone(), chart1: t };
        let beta = dc.complete_cotangent(MatLaurent::monomial(e21, -1)).unwrap();
        assert_eq!(dc.duality_pair(&alpha, &beta).unwrap(), rat(1, 1));
    }

    #[test]
    fn invalid_cocycles_are_rejected() {
        let dc = DeformationComplex::new(&companion(p(&[4, 0, -5]), 4));
        let h = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(-1, 1)]];
        // pole at infinity on chart 1
        let t = MatLaurent::monomial(h.clone(), 3);
        let bad =
            HyperCocycle { kind: CocycleKind::Tangent, overlap: MatLaurent::zero(2), chart0: t.clone(), chart1: t };
        assert!(matches!(dc.validate(&bad), Err(Error::CocycleViolation(_))));
        // cocycle condition broken
        let bad = HyperCocycle {
            kind: CocycleKind::Tangent,
            overlap: MatLaurent::monomial(h.clone(), -1),
            chart0: MatLaurent::zero(2),
            chart1: MatLaurent::zero(2),
        };
        assert!(matches!(dc.validate(&bad), Err(Error::CocycleViolation(_))));
        let cb = dc.cotangent_basis();
        assert!(dc.duality_pair(&bad, &cb[0]).is_err());
        // residue obstruction
        assert!(dc.complete_cotangent(MatLaurent::monomial(h, -1)).is_err());
    }

    fn random_traceless(rng: &mut ChaCha8Rng, n: usize) -> Mat {
        let mut m: Mat = (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect()).collect();
        let tr: Rational = (0..n - 1).map(|i| m[i][i].clone()).sum();
        m[n - 1][n - 1] = -tr;
        m
    }

    fn random_laurent(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> MatLaurent {
        let terms: Vec<(i64, Mat)> = (lo..=hi).map(|k| (k, random_traceless(rng, n))).collect();
        MatLaurent::from_terms(n, terms).unwrap()
    }

    fn random_a1(rng: &mut ChaCha8Rng, d: u32) -> HiggsFieldP1 {
        let m = (d - 2) as usize;
        let mut entry = || p(&(0..=m).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
        let a = entry();
        let (b, c) = (entry(), entry());
        let mat = TracelessMatrix::new(vec![vec![a.clone(), b], vec![c, -a]]).unwrap();
        let q = rat(rng.gen_range(-2..=2), 1);
        HiggsFieldP1::new(DivisorP1::new(vec![(q, d - 1), (rat(5, 1), 1)]).unwrap(), mat).unwrap()
    }

    #[test]
    fn pairing_ignores_coboundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let th = random_a1(&mut rng, 4);
            let dc = DeformationComplex::new(&th);
            let d = th.divisor().degree() as i64;
            let alpha =
                dc.complete_tangent(random_laurent(&mut rng, 2, -2, 3), random_laurent(&mut rng, 2, 0, 2)).unwrap();
            dc.validate(&alpha).unwrap();
            let cb = dc.cotangent_basis();
            let beta = cb[rng.gen_range(0..cb.len())].clone();
            let base = dc.duality_pair(&alpha, &beta).unwrap();

            let da = dc
                .coboundary(
                    CocycleKind::Tangent,
                    &random_laurent(&mut rng, 2, 0, 2),
                    &random_laurent(&mut rng, 2, -2, 0),
                )
                .unwrap();
            let alpha2 = HyperCocycle {
                kind: CocycleKind::Tangent,
                overlap: alpha.overlap.add(&da.overlap),
                chart0: alpha.chart0.add(&da.chart0),
                chart1: alpha.chart1.add(&da.chart1),
            };
            assert_eq!(dc.duality_pair(&alpha2, &beta).unwrap(), base);

            let db = dc
                .coboundary(
                    CocycleKind::Cotangent,
                    &random_laurent(&mut rng, 2, 0, 2),
                    &random_laurent(&mut rng, 2, -d - 2, -d),
                )
                .unwrap();
            let beta2 = HyperCocycle {
                kind: CocycleKind::Cotangent,
                overlap: beta.overlap.add(&db.overlap),
                chart0: beta.chart0.add(&db.chart0),
                chart1: beta.chart1.add(&db.chart1),
            };
            assert_eq!(dc.duality_pair(&alpha, &beta2).unwrap(), base);
        }
    }

    #[test]
    fn poisson_is_skew_and_has_leaf_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut tested = 0;
        while tested < 5 {
            let th = random_a1(&mut rng, 4);
            let dc = DeformationComplex::new(&th);
            if dc.hyper_dims().h0 != 0 {
                continue;
            }
            let pm = dc.poisson_matrix();
            for i in 0..pm.len() {
                for j in 0..pm.len() {
                    assert_eq!(&pm[i][j] + &pm[j][i], Rational::zero());
                }
            }
            // dimHiggs - dim(B / B_0) = 6 - 4
            assert_eq!(linalg::rank(&pm), 2);
            tested += 1;
        }
    }
}
