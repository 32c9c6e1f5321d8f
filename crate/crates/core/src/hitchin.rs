//! Chart model of line bundles and Higgs fields on the projective line,
//! the Hitchin map, leaf bases, genericity and branch bookkeeping.
//!
//! The underlying bundle is trivial and `L = K(D)` is represented in the
//! frame `dz / delta_D(z)` on the affine chart, so sections of `L^k` are
//! polynomials of degree at most `k (d - 2)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{poly_gcd, ExactPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{lie_info, Family, TracelessMatrix};

/// Effective divisor supported in the affine chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorP1 {
    points: Vec<(Rational, u32)>,
}

impl DivisorP1 {
    /// Points must be distinct with positive multiplicities and total
    /// degree at least 2 (so `deg L >= 0`).
    pub fn new(points: Vec<(Rational, u32)>) -> Result<Self> {
        for (i, (q, n)) in points.iter().enumerate() {
            if *n == 0 {
                return Err(Error::InvalidDivisor(format!("zero multiplicity at {q}")));
            }
            if points[..i].iter().any(|(p, _)| p == q) {
                return Err(Error::InvalidDivisor(format!("repeated point {q}")));
            }
        }
        let d: u32 = points.iter().map(|(_, n)| n).sum();
        if d < 2 {
            return Err(Error::InvalidDivisor(format!("degree {d} < 2")));
        }
        Ok(DivisorP1 { points })
    }

    /// `n * [q]`.
    pub fn single(q: Rational, n: u32) -> Result<Self> {
        Self::new(vec![(q, n)])
    }

    pub fn points(&self) -> &[(Rational, u32)] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.iter().map(|(_, n)| *n as usize).sum()
    }

    /// `deg L = d - 2` on genus 0.
    pub fn twist(&self) -> usize {
        self.degree() - 2
    }

    /// `prod (z - q_j)^{n_j}`.
    pub fn delta(&self) -> ExactPoly {
        self.points
            .iter()
            .fold(ExactPoly::one(), |acc, (q, n)| acc * ExactPoly::new(vec![-q.clone(), Rational::one()]).pow(*n))
    }

    pub(crate) fn require_ample(&self) -> Result<()> {
        if self.degree() < 3 {
            return Err(Error::InvalidDivisor(format!("degree {} < 3", self.degree())));
        }
        Ok(())
    }
}

/// `O(k)` on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineBundleP1 {
    pub degree: i64,
}

impl LineBundleP1 {
    pub fn h0(&self) -> usize {
        (self.degree + 1).max(0) as usize
    }

    pub fn h1(&self) -> usize {
        (-self.degree - 1).max(0) as usize
    }

    /// Whether a chart polynomial is a global section.
    pub fn is_section(&self, p: &ExactPoly) -> bool {
        match p.degree() {
            None => true,
            Some(k) => self.degree >= 0 && k as i64 <= self.degree,
        }
    }
}

/// Traceless Higgs field on the trivial rank-n bundle, valued in `K(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsFieldP1 {
    divisor: DivisorP1,
    matrix: TracelessMatrix,
}

impl HiggsFieldP1 {
    pub fn new(divisor: DivisorP1, matrix: TracelessMatrix) -> Result<Self> {
        let m = divisor.twist();
        if let Some(k) = matrix.max_degree() {
            if k > m {
                return Err(Error::InvalidHiggsField(format!("entry degree {k} exceeds deg L = {m}")));
            }
        }
        Ok(HiggsFieldP1 { divisor, matrix })
    }

    pub fn divisor(&self) -> &DivisorP1 {
        &self.divisor
    }

    pub fn matrix(&self) -> &TracelessMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    /// `deg L`.
    pub fn twist(&self) -> usize {
        self.divisor.twist()
    }
}

/// Characteristic-polynomial coefficients `b_i = p_{d_i}(theta)`, `d_i = 2..n`.
pub fn hitchin_map(theta: &HiggsFieldP1) -> Result<Vec<ExactPoly>> {
    let m = theta.twist();
    let inv = theta.matrix.charpoly_invariants();
    for (i, b) in inv.iter().enumerate() {
        let di = i + 2;
        if let Some(k) = b.degree() {
            if k > di * m {
                return Err(Error::DegreeOverflow(format!("b_{di} has degree {k} > {}", di * m)));
            }
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionReport {
    pub dim_b: usize,
    pub dim_b0: usize,
    pub dim_higgs: usize,
    /// `dimHiggs - dimB`; meaningful only when nonnegative.
    pub fibre_dim: i64,
}

pub fn dimension_report(family: Family, rank: usize, d: usize) -> Result<DimensionReport> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("divisor degree {d} < 3")));
    }
    let info = lie_info(family, rank)?;
    let m = d - 2;
    let dim_b = info.degrees.iter().map(|di| di * m + 1).sum();
    let dim_b0 = info.degrees.iter().map(|di| (di * m + 1).saturating_sub(d)).sum();
    let dim_higgs = info.dim * m;
    Ok(DimensionReport { dim_b, dim_b0, dim_higgs, fibre_dim: dim_higgs as i64 - dim_b as i64 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchReport {
    pub ok: bool,
    pub branch_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Rank-one genericity: `deg b = 2m`, `b` squarefree and nonvanishing on `D`.
pub fn genericity_check(b: &ExactPoly, divisor: &DivisorP1) -> BranchReport {
    let target = 2 * divisor.twist();
    let reject = |reason: String| BranchReport { ok: false, branch_count: 0, reason: Some(reason) };
    match b.degree() {
        None => return reject("zero spectral coefficient".into()),
        Some(k) if k < target => return reject(format!("branch at infinity (degree {k} < {target})")),
        Some(k) if k > target => return reject(format!("degree {k} exceeds {target}")),
        _ => {}
    }
    if !b.is_squarefree() {
        return reject("repeated root".into());
    }
    if let Some((q, _)) = divisor.points().iter().find(|(q, _)| b.eval(q).is_zero()) {
        return reject(format!("branch point on D at {q}"));
    }
    debug_assert_eq!(poly_gcd(b, &divisor.delta()), ExactPoly::one());
    BranchReport { ok: true, branch_count: target, reason: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CameralGenus {
    pub branch_count: usize,
    /// Only computed for `A_1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
}

/// `N = |R| (d - 2)`; for `A_1` also the genus of the double cover.
pub fn cameral_genus(family: Family, rank: usize, d: usize) -> Result<CameralGenus> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("divisor degree {d} < 3")));
    }
    let info = lie_info(family, rank)?;
    let n = info.num_roots * (d - 2);
    let genus = (family == Family::A && rank == 1).then(|| {
        // Riemann-Hurwitz for a double cover of P^1 with n branch points
        let g = n / 2 - 1;
        debug_assert_eq!(g, dimension_report(family, rank, d).map(|r| r.dim_b0).unwrap_or(g));
        g
    });
    Ok(CameralGenus { branch_count: n, genus })
}

/// Affine leaf `{o} + B_0` for type `A_{n-1}`: `B_0` consists of the
/// sections of `L^{d_i}` vanishing on `D`, i.e. multiples of `delta_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafBase {
    degrees: Vec<usize>,
    twist: usize,
    delta: ExactPoly,
    basepoint: Vec<ExactPoly>,
    directions: Vec<Vec<ExactPoly>>,
}

impl LeafBase {
    pub fn new(rank: usize, divisor: &DivisorP1, basepoint: Vec<ExactPoly>) -> Result<Self> {
        let degrees: Vec<usize> = (2..=rank + 1).collect();
        if basepoint.len() != degrees.len() {
            return Err(Error::InvalidArgument(format!(
                "basepoint has {} components, expected {}",
                basepoint.len(),
                degrees.len()
            )));
        }
        let m = divisor.twist();
        let d = divisor.degree();
        for (b, di) in basepoint.iter().zip(&degrees) {
            if b.degree().is_some_and(|k| k > di * m) {
                return Err(Error::DegreeOverflow(format!("basepoint component of degree > {}", di * m)));
            }
        }
        let delta = divisor.delta();
        let directions = degrees
            .iter()
            .map(|di| {
                let count = (di * m + 1).saturating_sub(d);
                (0..count).map(|j| &delta * &ExactPoly::monomial(Rational::one(), j)).collect()
            })
            .collect();
        Ok(LeafBase { degrees, twist: m, delta, basepoint, directions })
    }

    pub fn basepoint(&self) -> &[ExactPoly] {
        &self.basepoint
    }

    /// Basis of `B_0`, grouped by invariant degree.
    pub fn directions(&self) -> &[Vec<ExactPoly>] {
        &self.directions
    }

    pub fn dim(&self) -> usize {
        self.directions.iter().map(Vec::len).sum()
    }

    /// Whether `p` is a tangent vector along the `i`-th invariant.
    pub fn is_direction(&self, i: usize, p: &ExactPoly) -> bool {
        let bound = self.degrees[i] * self.twist;
        p.degree().is_none_or(|k| k <= bound) && p.checked_div(&self.delta).is_some()
    }

    /// `o + sum_k c_k e_k` for coordinates in the direction basis.
    pub fn point(&self, coords: &[Rational]) -> Result<Vec<ExactPoly>> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a {}-dimensional leaf",
                coords.len(),
                self.dim()
            )));
        }
        let mut it = coords.iter();
        Ok(self
            .basepoint
            .iter()
            .zip(&self.directions)
            .map(|(b, dirs)| dirs.iter().fold(b.clone(), |acc, e| acc + e.scale(it.next().expect("length checked"))))
            .collect())
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

    fn d0(n: u32) -> DivisorP1 {
        DivisorP1::single(rat(0, 1), n).unwrap()
    }

    #[test]
    fn hitchin_map_examples() {
        let q = p(&[4, 0, -5]);
        let o = ExactPoly::zero;
        let th = HiggsFieldP1::new(
            d0(4),
            TracelessMatrix::new(vec![vec![o(), ExactPoly::one()], vec![q.clone(), o()]]).unwrap(),
        )
        .unwrap();
        assert_eq!(hitchin_map(&th).unwrap(), vec![-q]);

        let a = p(&[1, -2, 3]);
        let th =
            HiggsFieldP1::new(d0(4), TracelessMatrix::new(vec![vec![a.clone(), o()], vec![o(), -a.clone()]]).unwrap())
                .unwrap();
        assert_eq!(hitchin_map(&th).unwrap(), vec![-(&a * &a)]);

        let th = HiggsFieldP1::new(d0(4), TracelessMatrix::zero(2)).unwrap();
        assert!(hitchin_map(&th).unwrap()[0].is_zero());
    }

    #[test]
    fn higgs_entries_are_degree_bounded() {
        let o = ExactPoly::zero;
        let big = p(&[0, 0, 0, 1]);
        let r = HiggsFieldP1::new(d0(4), TracelessMatrix::new(vec![vec![o(), big], vec![o(), o()]]).unwrap());
        assert!(matches!(r, Err(Error::InvalidHiggsField(_))));
    }

    #[test]
    fn divisor_validation() {
        assert!(DivisorP1::new(vec![(rat(0, 1), 2), (rat(0, 1), 1)]).is_err());
        assert!(DivisorP1::new(vec![(rat(1, 1), 0), (rat(0, 1), 3)]).is_err());
        assert!(DivisorP1::new(vec![(rat(1, 1), 1)]).is_err());
        let d = DivisorP1::new(vec![(rat(1, 1), 2), (rat(-1, 2), 1)]).unwrap();
        assert_eq!(d.degree(), 3);
        assert_eq!(d.delta(), &p(&[1, -2, 1]) * &ExactPoly::new(vec![rat(1, 2), rat(1, 1)]));
    }

    #[test]
    fn dimension_examples() {
        let r = dimension_report(Family::A, 1, 4).unwrap();
        assert_eq!((r.dim_b, r.dim_b0, r.dim_higgs), (5, 1, 6));
        let r = dimension_report(Family::A, 1, 5).unwrap();
        assert_eq!((r.dim_b, r.dim_b0, r.dim_higgs), (7, 2, 9));
        let r = dimension_report(Family::A, 2, 4).unwrap();
        assert_eq!((r.dim_b, r.dim_b0, r.dim_higgs), (12, 4, 16));
        assert!(dimension_report(Family::A, 1, 2).is_err());
    }

    #[test]
    fn genericity_examples() {
        let ok = genericity_check(&p(&[4, 0, -5, 0, 1]), &d0(4));
        assert!(ok.ok);
        assert_eq!(ok.branch_count, 4);
        let rep = genericity_check(&(&p(&[-1, 1]).pow(2) * &p(&[1, 0, 1])), &d0(4));
        assert_eq!(rep.reason.as_deref(), Some("repeated root"));
        let inf = genericity_check(&p(&[1, 0, 0, 1]), &d0(4));
        assert!(!inf.ok);
        assert!(inf.reason.unwrap().starts_with("branch at infinity"));
        let on_d = genericity_check(&p(&[0, 1, 0, 0, 1]), &d0(4));
        assert!(on_d.reason.unwrap().starts_with("branch point on D"));
    }

    #[test]
    fn genus_examples() {
        let g = cameral_genus(Family::A, 1, 4).unwrap();
        assert_eq!((g.branch_count, g.genus), (4, Some(1)));
        let g = cameral_genus(Family::A, 1, 5).unwrap();
        assert_eq!((g.branch_count, g.genus), (6, Some(2)));
        let g = cameral_genus(Family::A, 2, 4).unwrap();
        assert_eq!((g.branch_count, g.genus), (12, None));
    }

    #[test]
    fn genus_equals_leaf_dimension() {
        for d in 4..=8 {
            let g = cameral_genus(Family::A, 1, d).unwrap().genus.unwrap();
            assert_eq!(g, dimension_report(Family::A, 1, d).unwrap().dim_b0);
        }
    }

    #[test]
    fn leaf_directions_divisible_by_delta() {
        let div = DivisorP1::new(vec![(rat(1, 1), 2), (rat(-2, 1), 3)]).unwrap();
        let leaf = LeafBase::new(2, &div, vec![ExactPoly::zero(), ExactPoly::zero()]).unwrap();
        let rep = dimension_report(Family::A, 2, 5).unwrap();
        assert_eq!(leaf.dim(), rep.dim_b0);
        for (i, dirs) in leaf.directions().iter().enumerate() {
            for e in dirs {
                assert!(leaf.is_direction(i, e));
            }
        }
        assert!(!leaf.is_direction(0, &p(&[1])));
    }

    fn random_higgs(n: usize, d: u32, seed: &[i64]) -> HiggsFieldP1 {
        let m = (d - 2) as usize;
        let mut it = seed.iter().cycle();
        let mut entries: Vec<Vec<ExactPoly>> = (0..n)
            .map(|_| (0..n).map(|_| p(&(0..=m).map(|_| *it.next().unwrap()).collect::<Vec<_>>())).collect())
            .collect();
        let tr = (0..n - 1).fold(ExactPoly::zero(), |acc, i| acc + entries[i][i].clone());
        entries[n - 1][n - 1] = -tr;
        HiggsFieldP1::new(d0(d), TracelessMatrix::new(entries).unwrap()).unwrap()
    }

    proptest! {
        #[test]
        fn hitchin_degrees_bounded(n in 2usize..=3, d in 3u32..=6, seed in prop::collection::vec(-3i64..=3, 1..40)) {
            let th = random_higgs(n, d, &seed);
            let m = (d - 2) as usize;
            let b = hitchin_map(&th).unwrap();
            for (i, bi) in b.iter().enumerate() {
                prop_assert!(bi.degree().is_none_or(|k| k <= (i + 2) * m));
            }
        }

        #[test]
        fn generic_implies_nonzero_discriminant(c in prop::collection::vec(-4i64..=4, 5), q in -2i64..=2) {
            let mut c = c;
            c[4] = 1;
            let b = p(&c);
            let div = DivisorP1::single(rat(q, 1), 4).unwrap();
            let rep = genericity_check(&b, &div);
            if rep.ok {
                prop_assert!(!crate::algebra::discriminant(&b).unwrap().is_zero());
                prop_assert_eq!(poly_gcd(&b, &div.delta()), ExactPoly::one());
            }
        }
    }
}
