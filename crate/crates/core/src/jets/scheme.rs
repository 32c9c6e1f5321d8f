use serde::Serialize;

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Affine variety cut out by polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineVariety {
    vars: Vec<String>,
    generators: Vec<MultiPoly>,
}

impl AffineVariety {
    /// Each generator must be over exactly `vars`.
    pub fn new(vars: Vec<String>, generators: Vec<MultiPoly>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.vars() != vars.as_slice()) {
            return Err(Error::InvalidArgument(format!("generator over {:?}, variety over {:?}", g.vars(), vars)));
        }
        Ok(AffineVariety { vars, generators })
    }

    pub fn affine_space(vars: Vec<String>) -> Self {
        AffineVariety { vars, generators: Vec::new() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// Indices of generators that normalised to zero.
    pub fn zero_generators(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].is_zero()).collect()
    }

    pub fn with_generator(&self, g: MultiPoly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(self.vars.clone(), gens)
    }
}

/// n-th jet scheme of an embedded affine variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetScheme {
    base: AffineVariety,
    order: usize,
    variables: Vec<String>,
    // coefficient of t^k in the l-th generator, indexed [l][k]
    coefficients: Vec<Vec<MultiPoly>>,
}

/// Name of the jet coordinate `y_{i,k}`.
pub fn jet_variable(var: &str, k: usize) -> String {
    format!("{var}_{k}")
}

impl JetScheme {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base(&self) -> &AffineVariety {
        &self.base
    }

    /// Jet coordinates in i-major order: `x_0, ..., x_n, y_0, ...`.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// `g_{l,k}`, possibly zero.
    pub fn coefficient(&self, l: usize, k: usize) -> &MultiPoly {
        &self.coefficients[l][k]
    }

    /// Nonzero equations in `(l, k)` order.
    pub fn equations(&self) -> Vec<&MultiPoly> {
        self.coefficients.iter().flat_map(|row| row.iter()).filter(|g| !g.is_zero()).collect()
    }

    pub fn report(&self) -> JetReport {
        JetReport {
            order: self.order,
            variables: self.variables.clone(),
            equations: self.equations().iter().map(|g| g.to_string()).collect(),
        }
    }

    #[cfg(test)]
    pub(crate) fn coefficient_mut(&mut self, l: usize, k: usize) -> &mut MultiPoly {
        &mut self.coefficients[l][k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetReport {
    pub order: usize,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
}

type TruncSeries = Vec<MultiPoly>;

fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    let n = a.len();
    let vars = a[0].vars().to_vec();
    (0..n)
        .map(|k| {
            (0..=k).fold(MultiPoly::zero(&vars), |acc, i| {
                if a[i].is_zero() || b[k - i].is_zero() {
                    acc
                } else {
                    acc.add(&a[i].mul(&b[k - i]))
                }
            })
        })
        .collect()
}

/// Substitutes `x_i = sum_{k<=n} y_{i,k} t^k` and reads off the
/// coefficients of `t^0, ..., t^n`.
pub fn jet_equations(v: &AffineVariety, n: usize) -> JetScheme {
    let variables: Vec<String> = v.vars.iter().flat_map(|x| (0..=n).map(move |k| jet_variable(x, k))).collect();
    let arcs: Vec<TruncSeries> =
        (0..v.vars.len()).map(|i| (0..=n).map(|k| MultiPoly::var(&variables, i * (n + 1) + k)).collect()).collect();
    let one: TruncSeries = (0..=n)
        .map(|k| {
            if k == 0 {
                MultiPoly::constant(&variables, Rational::from_integer(1.into()))
            } else {
                MultiPoly::zero(&variables)
            }
        })
        .collect();
    let coefficients = v
        .generators
        .iter()
        .map(|f| {
            let mut total: TruncSeries = vec![MultiPoly::zero(&variables); n + 1];
            for (e, c) in f.terms() {
                let mut term = one.clone();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        term = series_mul(&term, &arcs[i]);
                    }
                }
                for (t, s) in total.iter_mut().zip(&term) {
                    *t = t.add(&s.scale(c));
                }
            }
            total
        })
        .collect();
    JetScheme { base: v.clone(), order: n, variables, coefficients }
}

/// Whether the first `n` coefficients of every generator in `jn` coincide
/// with the equations of `jn1` under the inclusion of jet coordinates.
pub fn truncation_check(jn: &JetScheme, jn1: &JetScheme) -> Result<bool> {
    if jn.base != jn1.base {
        return Err(Error::MismatchedVarieties);
    }
    if jn.order != jn1.order + 1 {
        return Err(Error::InvalidArgument(format!("orders {} and {} are not consecutive", jn.order, jn1.order)));
    }
    for (row_n, row_n1) in jn.coefficients.iter().zip(&jn1.coefficients) {
        for (g, h) in row_n.iter().zip(row_n1) {
            match h.embed(&jn.variables) {
                Some(h) if h == *g => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::jets::parse_system;
    use proptest::prelude::*;

    #[test]
    fn affine_space_has_no_equations() {
        let v = AffineVariety::affine_space(vec!["x".into(), "y".into()]);
        let j = jet_equations(&v, 3);
        assert_eq!(j.variables().len(), 8);
        assert!(j.equations().is_empty());
        let j2 = jet_equations(&v, 2);
        assert!(truncation_check(&j, &j2).unwrap());
    }

    #[test]
    fn cusp_first_jets() {
        let v = parse_system("vars x,y; x^2 - y^3").unwrap();
        let j = jet_equations(&v, 1);
        assert_eq!(j.variables(), ["x_0", "x_1", "y_0", "y_1"]);
        let eqs: Vec<String> = j.equations().iter().map(|g| g.to_string()).collect();
        assert_eq!(eqs, ["x_0^2 - y_0^3", "2*x_0*x_1 - 3*y_0^2*y_1"]);
    }

    #[test]
    fn order_zero_renames() {
        let v = parse_system("vars x,y; x*y - 1; x^3 + 2*y").unwrap();
        let j = jet_equations(&v, 0);
        let eqs: Vec<String> = j.equations().iter().map(|g| g.to_string()).collect();
        assert_eq!(eqs, ["x_0*y_0 - 1", "x_0^3 + 2*y_0"]);
    }

    #[test]
    fn truncation_examples() {
        let v = parse_system("vars x,y; x^2 - y^3").unwrap();
        let j2 = jet_equations(&v, 2);
        let j1 = jet_equations(&v, 1);
        assert!(truncation_check(&j2, &j1).unwrap());
        let mut bad = j2.clone();
        let vars = bad.variables().to_vec();
        *bad.coefficient_mut(0, 1) = bad.coefficient(0, 1).add(&MultiPoly::constant(&vars, rat(1, 1)));
        assert!(!truncation_check(&bad, &j1).unwrap());
        let other = parse_system("vars x,y; x - y").unwrap();
        assert_eq!(truncation_check(&j2, &jet_equations(&other, 1)), Err(Error::MismatchedVarieties));
        assert!(truncation_check(&j2, &jet_equations(&v, 0)).is_err());
    }

    #[test]
    fn adding_a_generator_adds_equations() {
        let w = parse_system("vars x,y,z; x*y - z^2").unwrap();
        let extra = parse_system("vars x,y,z; x + y + z").unwrap().generators()[0].clone();
        let v = w.with_generator(extra).unwrap();
        for n in 0..=3 {
            let vn: Vec<String> = jet_equations(&v, n).equations().iter().map(|g| g.to_string()).collect();
            for g in jet_equations(&w, n).equations() {
                assert!(vn.contains(&g.to_string()));
            }
        }
    }

    fn random_system() -> impl Strategy<Value = AffineVariety> {
        (1usize..=3).prop_flat_map(|nv| {
            let vars: Vec<String> = ["x", "y", "z"][..nv].iter().map(|s| s.to_string()).collect();
            let term = (prop::collection::vec(0u32..=3, nv), -3i64..=3);
            let poly = prop::collection::vec(term, 1..4);
            prop::collection::vec(poly, 0..3).prop_map(move |gens| {
                let gens = gens
                    .into_iter()
                    .map(|terms| {
                        MultiPoly::from_terms(
                            &vars,
                            terms.into_iter().map(|(mut e, c)| {
                                // keep total degree <= 3
                                while e.iter().sum::<u32>() > 3 {
                                    let i = e.iter().position(|&k| k > 0).unwrap();
                                    e[i] -= 1;
                                }
                                (e, rat(c, 1))
                            }),
                        )
                    })
                    .collect();
                AffineVariety::new(vars.clone(), gens).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn consecutive_jets_truncate(v in random_system(), n in 1usize..=4) {
            let jn = jet_equations(&v, n);
            let jn1 = jet_equations(&v, n - 1);
            prop_assert_eq!(jn.variables().len(), v.vars().len() * (n + 1));
            prop_assert!(jn.equations().len() <= v.generators().len() * (n + 1));
            prop_assert!(truncation_check(&jn, &jn1).unwrap());
        }
    }
}
