//! The cubic form of a rank-one spectral cover `y^2 = b(z)` over a leaf of
//! the meromorphic Hitchin base, evaluated as half the sum of quadratic
//! residues of `(bdot / b) * u v dz^2 / b` at the ramification points.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{rational_to_f64, series_sqrt, ComplexNum, ExactPoly, LaurentSeries, Rational, Scalar};
use crate::error::{Error, Result};
use crate::hitchin::{genericity_check, DivisorP1};
use crate::periods::complex_roots;

/// Generic branch data `y^2 = b(z)` with `deg b = 2m`, `m = d - 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CameralDataA1 {
    b: ExactPoly,
    divisor: DivisorP1,
    delta: ExactPoly,
}

impl CameralDataA1 {
    pub fn new(b: ExactPoly, divisor: DivisorP1) -> Result<Self> {
        divisor.require_ample()?;
        let report = genericity_check(&b, &divisor);
        if !report.ok {
            return Err(Error::NotGeneric(report.reason.unwrap_or_default()));
        }
        let delta = divisor.delta();
        Ok(CameralDataA1 { b, divisor, delta })
    }

    pub fn b(&self) -> &ExactPoly {
        &self.b
    }

    pub fn divisor(&self) -> &DivisorP1 {
        &self.divisor
    }

    pub fn delta(&self) -> &ExactPoly {
        &self.delta
    }

    pub fn twist(&self) -> usize {
        self.divisor.twist()
    }

    /// Genus `m - 1` of the spectral curve.
    pub fn genus(&self) -> usize {
        self.twist() - 1
    }

    /// Same divisor, branch polynomial `b + beta * bdot`.
    pub fn perturbed(&self, bdot: &ExactPoly, beta: &Rational) -> Result<Self> {
        Self::new(&self.b + &bdot.scale(beta), self.divisor.clone())
    }

    /// Tangent basis `bdot_i = 2 z^i delta_D` of the leaf, `i < genus`.
    pub fn tangent_basis(&self) -> Vec<ExactPoly> {
        (0..self.genus()).map(|i| &ExactPoly::monomial(Rational::from_integer(2.into()), i) * &self.delta).collect()
    }
}

/// `u(z) dz / y` with `deg u <= genus - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphicForm {
    u: ExactPoly,
}

impl HolomorphicForm {
    pub fn new(u: ExactPoly, data: &CameralDataA1) -> Result<Self> {
        if u.degree().is_some_and(|k| k + 1 > data.genus()) {
            return Err(Error::InvalidForm(format!(
                "deg u = {} exceeds genus - 1 = {}",
                u.degree_string(),
                data.genus() as i64 - 1
            )));
        }
        Ok(HolomorphicForm { u })
    }

    pub fn u(&self) -> &ExactPoly {
        &self.u
    }
}

/// Direction `bdot` in the leaf together with its form `bdot / (2 delta_D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafTangent {
    bdot: ExactPoly,
    form: HolomorphicForm,
}

impl LeafTangent {
    pub fn new(bdot: ExactPoly, data: &CameralDataA1) -> Result<Self> {
        let form = tangent_to_form(&bdot, data)?;
        Ok(LeafTangent { bdot, form })
    }

    pub fn bdot(&self) -> &ExactPoly {
        &self.bdot
    }

    pub fn form(&self) -> &HolomorphicForm {
        &self.form
    }
}

/// `u = bdot / (2 delta_D)`, exact.
pub fn tangent_to_form(bdot: &ExactPoly, data: &CameralDataA1) -> Result<HolomorphicForm> {
    if bdot.degree().is_some_and(|k| k > 2 * data.twist()) {
        return Err(Error::NotTangentToLeaf);
    }
    let q = bdot.checked_div(&data.delta).ok_or(Error::NotTangentToLeaf)?;
    HolomorphicForm::new(q.scale(&Rational::new(1.into(), 2.into())), data)
}

fn check_branch_point(b: &ExactPoly, c: &Rational) -> Result<Rational> {
    if !b.eval(c).is_zero() {
        return Err(Error::InvalidArgument(format!("{c} is not a root of b")));
    }
    let db = b.derivative().eval(c);
    if db.is_zero() {
        return Err(Error::NonSimpleBranchPoint);
    }
    Ok(db)
}

/// Closed form `4 bdot(c) u(c) v(c) / b'(c)^2` of the quadratic residue at the
/// ramification point over a rational branch point `c`.
pub fn res2_at_branch(
    data: &CameralDataA1,
    bdot: &ExactPoly,
    u: &ExactPoly,
    v: &ExactPoly,
    c: &Rational,
) -> Result<Rational> {
    let db = check_branch_point(&data.b, c)?;
    Ok(Rational::from_integer(4.into()) * bdot.eval(c) * u.eval(c) * v.eval(c) / (&db * &db))
}

/// Coefficients of `p(c + s)` in `s`.
pub fn taylor_shift<T: Scalar>(p: &ExactPoly, c: &T) -> Vec<T> {
    let mut a: Vec<T> = p.coeffs().iter().map(T::from_rational).collect();
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            a[j] = a[j].clone() + c.clone() * a[j + 1].clone();
        }
    }
    a
}

/// Power series `sum_k a_k x^{2k}` in `var`, known through `x^order`.
fn even_series<T: Scalar>(var: &str, a: &[T], order: i64) -> Result<LaurentSeries<T>> {
    let mut coeffs = vec![T::zero(); (order + 1) as usize];
    for (k, v) in a.iter().enumerate() {
        if 2 * k <= order as usize {
            coeffs[2 * k] = v.clone();
        }
    }
    LaurentSeries::new(var, 0, coeffs, order)
}

/// Pulls back a quadratic differential `q(x) dx^2` with at most a double pole
/// along `x = phi(y)`, `phi(0) = 0`, `phi'(0) != 0`.
pub fn pullback_quadratic<T: Scalar>(q: &LaurentSeries<T>, phi: &LaurentSeries<T>) -> Result<LaurentSeries<T>> {
    if q.min_exp() < -2 {
        return Err(Error::InvalidArgument("quadratic differential has a pole of order > 2".into()));
    }
    let regular = q.shift(2);
    let composed = phi.compose_into(&regular)?;
    let inv = phi.inv()?;
    let dphi = phi.derivative();
    Ok(composed.mul(&inv.mul(&inv)).mul(&dphi.mul(&dphi)))
}

/// Local data at a branch point: `q(w) dw^2` for
/// `q = num(z) dz^2 / b(z)^2` in the coordinate `w = t sqrt(V(t^2) / V(0))`,
/// where `z = c + t^2` and `b(c + s) = s V(s)`. Then `b = V(0) w^2` exactly.
pub fn local_quadratic<T: Scalar>(b: &ExactPoly, num: &ExactPoly, c: &T, order: i64) -> Result<LaurentSeries<T>> {
    let bt = taylor_shift(b, c);
    if bt.len() < 2 {
        return Err(Error::DegreeTooSmall("constant branch polynomial".into()));
    }
    let v0 = bt[1].clone();
    let v0_inv = v0.inv().ok_or(Error::NonSimpleBranchPoint)?;
    let v = even_series("t", &bt[1..], order)?;
    let p = even_series("t", &taylor_shift(num, c), order)?;
    // q = num(c + t^2) (2t dt)^2 / (t^2 V)^2 = 4 num / (t^2 V^2) dt^2
    let four = T::from_rational(&Rational::from_integer(4.into()));
    let vinv = v.inv()?;
    let q_t = p.mul(&vinv).mul(&vinv).scale(&four).shift(-2);
    let w_of_t = series_sqrt(&v.scale(&v0_inv))?.shift(1);
    let t_of_w = w_of_t.revert("w")?;
    pullback_quadratic(&q_t, &t_of_w)
}

/// Quadratic residue at the ramification point over `c` by local series
/// expansion; `c` may be exact or a floating root.
pub fn res2_series<T: Scalar>(
    data: &CameralDataA1,
    bdot: &ExactPoly,
    u: &ExactPoly,
    v: &ExactPoly,
    c: &T,
) -> Result<T> {
    let num = &(bdot * u) * v;
    local_quadratic(&data.b, &num, c, 6)?.coeff(-2)
}

/// [`res2_series`] recomputed in the coordinate `w' = w (1 + w)`.
pub fn res2_series_reparametrised<T: Scalar>(
    data: &CameralDataA1,
    bdot: &ExactPoly,
    u: &ExactPoly,
    v: &ExactPoly,
    c: &T,
) -> Result<T> {
    let num = &(bdot * u) * v;
    let q = local_quadratic(&data.b, &num, c, 6)?;
    let order = q.order() + 2;
    let w_prime = LaurentSeries::new("w", 1, vec![T::one(), T::one()], order)?;
    let w_of_wp = w_prime.revert("w'")?;
    pullback_quadratic(&q, &w_of_wp)?.coeff(-2)
}

/// `sum_{b(c) = 0} num(c) / b'(c)^2` without extracting roots: reduce
/// `num * (b'^{-1} mod b)^2` modulo `b` and pair with Newton power sums.
pub fn root_sum(b: &ExactPoly, num: &ExactPoly) -> Result<Rational> {
    let n = b.degree().filter(|&n| n >= 1).ok_or_else(|| Error::DegreeTooSmall("b is constant".into()))?;
    let db = b.derivative();
    let s = db.inverse_mod(b).ok_or(Error::NonSimpleBranchPoint)?;
    let reduced = (&(num * &s) * &s).rem(b);
    let monic = b.monic();
    // Newton: p_k = -(k a_{n-k} + sum_{i=1}^{k-1} a_{n-i} p_{k-i})
    let a = |i: usize| monic.coeff(i);
    let mut p = vec![Rational::from_integer(n.into())];
    for k in 1..n {
        let mut acc = Rational::from_integer(k.into()) * a(n - k);
        for i in 1..k {
            acc += a(n - i) * &p[k - i];
        }
        p.push(-acc);
    }
    Ok(reduced.coeffs().iter().zip(&p).map(|(q, s)| q * s).sum())
}

/// `1/2 sum_c Res^2 = 2 sum_c bdot(c) u(c) v(c) / b'(c)^2`, exact.
pub fn cubic_eval(
    data: &CameralDataA1,
    xi: &LeafTangent,
    eta: &HolomorphicForm,
    zeta: &HolomorphicForm,
) -> Result<Rational> {
    cubic_eval_raw(data, &xi.bdot, &eta.u, &zeta.u)
}

fn cubic_eval_raw(data: &CameralDataA1, bdot: &ExactPoly, u: &ExactPoly, v: &ExactPoly) -> Result<Rational> {
    let num = &(bdot * u) * v;
    Ok(Rational::from_integer(2.into()) * root_sum(&data.b, &num)?)
}

/// [`cubic_eval`] summed over numerically computed branch points.
pub fn cubic_eval_f64(
    data: &CameralDataA1,
    xi: &LeafTangent,
    eta: &HolomorphicForm,
    zeta: &HolomorphicForm,
) -> Result<ComplexNum> {
    let roots = complex_roots(&data.b, 1e-12)?;
    let db = data.b.derivative();
    let num = &(&xi.bdot * &eta.u) * &zeta.u;
    Ok(roots.iter().map(|&c| num.eval_f64(c) * 2.0 / db.eval_f64(c).powu(2)).sum())
}

/// All roots of `b` when every one is rational.
pub fn rational_roots(b: &ExactPoly) -> Option<Vec<Rational>> {
    let roots = complex_roots(b, 1e-10).ok()?;
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        if r.im.abs() > 1e-6 * r.norm().max(1.0) {
            return None;
        }
        let q = best_rational(r.re, 1_000_000).filter(|q| b.eval(q).is_zero())?;
        out.push(q);
    }
    out.sort();
    out.dedup();
    (out.len() == b.degree().unwrap_or(0)).then_some(out)
}

/// Best approximation with bounded denominator, by continued fractions.
fn best_rational(x: f64, max_den: i64) -> Option<Rational> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational::new(h1.into(), k1.into()))
}

/// Symmetric 3-tensor `T[i][j][k] = cubic(bdot_i, z^j dz/y, z^k dz/y)` with
/// `bdot_i = 2 z^i delta_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicTensor {
    genus: usize,
    entries: Vec<Rational>,
}

impl CubicTensor {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.entries[(i * self.genus + j) * self.genus + k]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let g = self.genus;
        (0..g).all(|i| {
            (0..g).all(|j| {
                (0..g).all(|k| {
                    let e = self.get(i, j, k);
                    e == self.get(i, k, j) && e == self.get(j, i, k) && e == self.get(k, j, i)
                })
            })
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(rational_to_f64).collect()
    }

    pub fn basis_description(&self) -> &'static str {
        "directions bdot_i = 2 z^i delta_D; forms z^j dz/y"
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CubicTensorJson<'a> {
    genus: usize,
    basis: &'a str,
    entries: Vec<Vec<Vec<String>>>,
}

impl Serialize for CubicTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.genus;
        let entries =
            (0..g).map(|i| (0..g).map(|j| (0..g).map(|k| self.get(i, j, k).to_string()).collect()).collect()).collect();
        CubicTensorJson { genus: g, basis: self.basis_description(), entries }.serialize(s)
    }
}

pub fn cubic_tensor(data: &CameralDataA1) -> Result<CubicTensor> {
    let g = data.genus();
    let dirs = data.tangent_basis();
    let forms: Vec<ExactPoly> = (0..g).map(|j| ExactPoly::monomial(Rational::one(), j)).collect();
    let mut entries = Vec::with_capacity(g * g * g);
    for bdot in &dirs {
        for u in &forms {
            for v in &forms {
                entries.push(cubic_eval_raw(data, bdot, u, v)?);
            }
        }
    }
    Ok(CubicTensor { genus: g, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    fn reference() -> CameralDataA1 {
        CameralDataA1::new(p(&[4, 0, -5, 0, 1]), DivisorP1::single(rat(0, 1), 4).unwrap()).unwrap()
    }

    fn z_pow(k: usize) -> ExactPoly {
        ExactPoly::monomial(rat(1, 1), k)
    }

    #[test]
    fn tangent_to_form_examples() {
        let data = reference();
        assert_eq!(tangent_to_form(&z_pow(4), &data).unwrap().u(), &ExactPoly::constant(rat(1, 2)));
        assert!(tangent_to_form(&ExactPoly::zero(), &data).unwrap().u().is_zero());
        assert_eq!(tangent_to_form(&z_pow(3), &data), Err(Error::NotTangentToLeaf));

        let b5 = ExactPoly::from_roots(&[-3, -2, -1, 1, 2, 3].map(|r| rat(r, 1)));
        let d5 = CameralDataA1::new(b5, DivisorP1::single(rat(0, 1), 5).unwrap()).unwrap();
        assert_eq!(tangent_to_form(&z_pow(6), &d5).unwrap().u(), &ExactPoly::monomial(rat(1, 2), 1));
    }

    #[test]
    fn closed_form_examples() {
        let data = reference();
        let one = ExactPoly::one();
        assert_eq!(res2_at_branch(&data, &z_pow(4), &one, &one, &rat(1, 1)).unwrap(), rat(1, 9));
        assert_eq!(res2_at_branch(&data, &z_pow(4), &one, &one, &rat(2, 1)).unwrap(), rat(4, 9));
        assert!(res2_at_branch(&data, &z_pow(4), &one, &one, &rat(3, 1)).is_err());
    }

    #[test]
    fn non_simple_branch_point() {
        let d = DivisorP1::single(rat(0, 1), 4).unwrap();
        assert!(matches!(
            CameralDataA1::new(p(&[1, -2, 1, 0, 0]).scale(&rat(1, 1)), d.clone()),
            Err(Error::NotGeneric(_))
        ));
        assert_eq!(check_branch_point(&p(&[1, -2, 1]), &rat(1, 1)), Err(Error::NonSimpleBranchPoint));
        assert_eq!(
            local_quadratic::<Rational>(&p(&[1, -2, 1]), &p(&[1]), &rat(1, 1), 6).err(),
            Some(Error::NonSimpleBranchPoint)
        );
    }

    #[test]
    fn cubic_eval_examples() {
        let data = reference();
        let xi = LeafTangent::new(z_pow(4), &data).unwrap();
        let one = HolomorphicForm::new(ExactPoly::one(), &data).unwrap();
        assert_eq!(cubic_eval(&data, &xi, &one, &one).unwrap(), rat(5, 9));
        let f = cubic_eval_f64(&data, &xi, &one, &one).unwrap();
        assert!((f.re - 5.0 / 9.0).abs() < 1e-12 && f.im.abs() < 1e-12);

        let zero = LeafTangent::new(ExactPoly::zero(), &data).unwrap();
        assert!(cubic_eval(&data, &zero, &one, &one).unwrap().is_zero());

        let quartic = CameralDataA1::new(p(&[-1, 0, 0, 0, 1]), DivisorP1::single(rat(0, 1), 4).unwrap()).unwrap();
        let xi = LeafTangent::new(z_pow(4), &quartic).unwrap();
        let one = HolomorphicForm::new(ExactPoly::one(), &quartic).unwrap();
        assert!(cubic_eval(&quartic, &xi, &one, &one).unwrap().is_zero());
    }

    #[test]
    fn tensor_examples() {
        let t = cubic_tensor(&reference()).unwrap();
        assert_eq!(t.entries(), &[rat(10, 9)]);
        let d3 = CameralDataA1::new(p(&[-1, 0, 1]), DivisorP1::single(rat(5, 1), 3).unwrap()).unwrap();
        assert!(cubic_tensor(&d3).unwrap().entries().is_empty());
    }

    #[test]
    fn series_matches_closed_form_at_rational_roots() {
        let data = reference();
        let one = ExactPoly::one();
        for c in rational_roots(data.b()).unwrap() {
            let closed = res2_at_branch(&data, &z_pow(4), &one, &one, &c).unwrap();
            assert_eq!(res2_series(&data, &z_pow(4), &one, &one, &c).unwrap(), closed);
            assert_eq!(res2_series_reparametrised(&data, &z_pow(4), &one, &one, &c).unwrap(), closed);
        }
    }

    #[test]
    fn series_matches_closed_form_in_floats() {
        // irrational and complex roots
        let data = CameralDataA1::new(p(&[3, 1, 0, -2, 1, 0, 1]), DivisorP1::single(rat(0, 1), 5).unwrap()).unwrap();
        let bdot = &z_pow(5) * &p(&[2, 1]);
        let (u, v) = (p(&[1, 1]), p(&[-1, 3]));
        let db = data.b().derivative();
        let num = &(&bdot * &u) * &v;
        for c in complex_roots(data.b(), 1e-12).unwrap() {
            let closed = num.eval_f64(c) * 4.0 / db.eval_f64(c).powu(2);
            for s in [
                res2_series(&data, &bdot, &u, &v, &c).unwrap(),
                res2_series_reparametrised(&data, &bdot, &u, &v, &c).unwrap(),
            ] {
                assert!((s - closed).norm() <= 1e-12 * closed.norm().max(1.0), "{s} vs {closed}");
            }
        }
    }

    #[test]
    fn rational_root_detection() {
        assert_eq!(rational_roots(&p(&[4, 0, -5, 0, 1])).unwrap(), vec![rat(-2, 1), rat(-1, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(
            rational_roots(&ExactPoly::from_roots(&[rat(-1, 3), rat(5, 7)])).unwrap(),
            vec![rat(-1, 3), rat(5, 7)]
        );
        assert!(rational_roots(&p(&[-2, 0, 1])).is_none());
    }

    fn instance(d: u32, seed: &[i64]) -> Option<CameralDataA1> {
        let b = p(seed);
        CameralDataA1::new(b, DivisorP1::new(vec![(rat(0, 1), d - 1), (rat(7, 1), 1)]).unwrap()).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tensor_is_symmetric(d in 5u32..=6, raw in proptest::collection::vec(-6i64..=6, 9)) {
            let deg = 2 * (d as usize - 2);
            let mut c = raw[..deg].to_vec();
            c.push(1);
            if let Some(data) = instance(d, &c) {
                let t = cubic_tensor(&data).unwrap();
                prop_assert_eq!(t.genus(), d as usize - 3);
                prop_assert!(t.is_symmetric());
            }
        }

        #[test]
        fn trilinear_and_homogeneous(
            raw in proptest::collection::vec(-6i64..=6, 6),
            a in proptest::collection::vec(-5i64..=5, 2),
            e in proptest::collection::vec(-5i64..=5, 2),
            f in proptest::collection::vec(-5i64..=5, 2),
            lambda in -4i64..=4,
        ) {
            let mut c = raw.clone();
            c.push(1);
            let Some(data) = instance(5, &c) else { return Ok(()) };
            let dirs = data.tangent_basis();
            let comb = |x: &[i64], basis: &[ExactPoly]| basis.iter().zip(x).fold(ExactPoly::zero(), |acc, (b, &s)| acc + b.scale(&rat(s, 1)));
            let forms = [ExactPoly::one(), z_pow(1)];
            let xi = LeafTangent::new(comb(&a, &dirs), &data).unwrap();
            let eta = HolomorphicForm::new(comb(&e, &forms), &data).unwrap();
            let zeta = HolomorphicForm::new(comb(&f, &forms), &data).unwrap();
            let t = cubic_tensor(&data).unwrap();
            let mut expected = Rational::zero();
            for i in 0..2 { for j in 0..2 { for k in 0..2 {
                expected += t.get(i, j, k) * rat(a[i] * e[j] * f[k], 1);
            }}}
            let got = cubic_eval(&data, &xi, &eta, &zeta).unwrap();
            prop_assert_eq!(&got, &expected);
            let scaled = LeafTangent::new(xi.bdot().scale(&rat(lambda, 1)), &data).unwrap();
            prop_assert_eq!(cubic_eval(&data, &scaled, &eta, &zeta).unwrap(), got * rat(lambda, 1));
        }
    }
}
