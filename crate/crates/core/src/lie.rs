//! Simple Lie-type tables and characteristic-polynomial invariants of
//! traceless matrices (type A only).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{discriminant_of, ExactPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            other => Err(Error::InvalidArgument(format!("unknown Lie family {other:?}"))),
        }
    }
}

/// Rank, dimension, degrees of basic invariants and root/Weyl counts of a
/// simple Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimpleTypeInfo {
    pub family: Family,
    pub rank: usize,
    pub dim: usize,
    pub degrees: Vec<usize>,
    pub num_roots: usize,
    pub weyl_order: u64,
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Table entry for a simple type. Valid ranks: `A_l` (l >= 1), `B_l`
/// (l >= 2), `C_l` (l >= 2), `D_l` (l >= 3), `E_6..8`, `F_4`, `G_2`.
pub fn lie_info(family: Family, rank: usize) -> Result<SimpleTypeInfo> {
    let l = rank;
    let invalid = || Error::InvalidLieType { family: family.letter(), rank };
    let (dim, degrees, weyl_order): (usize, Vec<usize>, u64) = match family {
        Family::A if l >= 1 => (l * (l + 2), (2..=l + 1).collect(), factorial(l as u64 + 1)),
        Family::B | Family::C if l >= 2 => {
            (l * (2 * l + 1), (1..=l).map(|i| 2 * i).collect(), (1u64 << l) * factorial(l as u64))
        }
        Family::D if l >= 3 => {
            let mut d: Vec<usize> = (1..l).map(|i| 2 * i).collect();
            d.push(l);
            d.sort_unstable();
            (l * (2 * l - 1), d, (1u64 << (l - 1)) * factorial(l as u64))
        }
        Family::E => match l {
            6 => (78, vec![2, 5, 6, 8, 9, 12], 51_840),
            7 => (133, vec![2, 6, 8, 10, 12, 14, 18], 2_903_040),
            8 => (248, vec![2, 8, 12, 14, 18, 20, 24, 30], 696_729_600),
            _ => return Err(invalid()),
        },
        Family::F if l == 4 => (52, vec![2, 6, 8, 12], 1_152),
        Family::G if l == 2 => (14, vec![2, 6], 12),
        _ => return Err(invalid()),
    };
    let info = SimpleTypeInfo { family, rank, dim, degrees, num_roots: dim - l, weyl_order };
    debug_assert_eq!(info.degrees.iter().map(|d| 2 * d - 1).sum::<usize>(), info.dim);
    Ok(info)
}

/// Square matrix with polynomial entries and identically vanishing trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracelessMatrix {
    entries: Vec<Vec<ExactPoly>>,
}

impl TracelessMatrix {
    pub fn new(entries: Vec<Vec<ExactPoly>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be square and nonempty".into()));
        }
        let trace = (0..n).fold(ExactPoly::zero(), |acc, i| acc + entries[i][i].clone());
        if !trace.is_zero() {
            return Err(Error::NotTraceless);
        }
        Ok(TracelessMatrix { entries })
    }

    pub fn from_rationals(entries: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(entries.into_iter().map(|r| r.into_iter().map(ExactPoly::constant).collect()).collect())
    }

    pub fn zero(n: usize) -> Self {
        TracelessMatrix { entries: vec![vec![ExactPoly::zero(); n]; n] }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<ExactPoly>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactPoly {
        &self.entries[i][j]
    }

    /// Largest entry degree, `None` when the matrix is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().flatten().filter_map(|p| p.degree()).max()
    }

    /// Coefficients `(p_2, ..., p_n)` of `det(lambda - M) = lambda^n + p_2 lambda^{n-2} + ... + p_n`.
    pub fn charpoly_invariants(&self) -> Vec<ExactPoly> {
        let c = self.charpoly();
        let n = self.size();
        (2..=n).map(|k| c[n - k].clone()).collect()
    }

    /// Coefficients of `det(lambda - M)` indexed by the power of lambda.
    pub fn charpoly(&self) -> Vec<ExactPoly> {
        // Faddeev-LeVerrier: only divisions by the integers 1..n occur
        let n = self.size();
        let a = &self.entries;
        let mut c = vec![ExactPoly::zero(); n + 1];
        c[n] = ExactPoly::one();
        let mut m = vec![vec![ExactPoly::zero(); n]; n];
        for k in 1..=n {
            let mut next = matmul(a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = row[i].clone() + c[n - k + 1].clone();
            }
            m = next;
            let am = matmul(a, &m);
            let tr = (0..n).fold(ExactPoly::zero(), |acc, i| acc + am[i][i].clone());
            c[n - k] = tr.scale(&Rational::new((-1).into(), (k as i64).into()));
        }
        c
    }

    /// `disc_lambda det(lambda - M)`; for `n = 2` this is `-4 p_2`.
    pub fn charpoly_discriminant(&self) -> ExactPoly {
        if self.size() == 1 {
            return ExactPoly::one();
        }
        discriminant_of(&self.charpoly())
    }
}

pub(crate) fn matmul(a: &[Vec<ExactPoly>], b: &[Vec<ExactPoly>]) -> Vec<Vec<ExactPoly>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).fold(ExactPoly::zero(), |acc, l| acc + &a[i][l] * &b[l][j])).collect())
        .collect()
}

/// Free-function form of [`TracelessMatrix::charpoly_invariants`].
pub fn charpoly_invariants(m: &TracelessMatrix) -> Vec<ExactPoly> {
    m.charpoly_invariants()
}

/// Free-function form of [`TracelessMatrix::charpoly_discriminant`].
pub fn charpoly_discriminant(m: &TracelessMatrix) -> ExactPoly {
    m.charpoly_discriminant()
}

/// Basis of `sl_n` over the rationals: off-diagonal units `E_ij`, then
/// `E_ii - E_{i+1,i+1}`.
pub fn sl_basis(n: usize) -> Vec<Vec<Vec<Rational>>> {
    let zero = || vec![vec![Rational::zero(); n]; n];
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = zero();
                e[i][j] = Rational::one();
                out.push(e);
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut h = zero();
        h[i][i] = Rational::one();
        h[i + 1][i + 1] = -Rational::one();
        out.push(h);
    }
    out
}
