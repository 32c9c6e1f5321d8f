//! Dense linear algebra over the rationals (rank, kernels, determinants) and
//! small complex systems.

use num_traits::{One, Zero};

use super::{bareiss_determinant, ComplexNum, Rational};

pub type RatMatrix = Vec<Vec<Rational>>;
pub type ComplexMatrix = Vec<Vec<ComplexNum>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn determinant(m: &RatMatrix) -> Rational {
    bareiss_determinant(m.clone())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Inverse by Gauss-Jordan with partial pivoting; `None` when singular to
/// working precision.
pub fn complex_inverse(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<ComplexNum>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { ComplexNum::new(1.0, 0.0) } else { ComplexNum::new(0.0, 0.0) }));
            r
        })
        .collect();
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))?;
        if a[p][c].norm() <= 1e-14 * scale {
            return None;
        }
        a.swap(c, p);
        let inv = a[c][c].inv();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c {
                let f = a[i][c];
                for j in 0..2 * n {
                    let v = f * a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn complex_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

/// Cholesky test for a real symmetric matrix.
pub fn is_positive_definite(m: &[Vec<f64>]) -> bool {
    let n = m.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = m[i][i] - s;
                if d <= 0.0 {
                    return false;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn rank_and_kernel() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ];
        assert_eq!(rank(&m), 2);
        let ker = nullspace(&m, 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ker[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let m = vec![
            vec![ComplexNum::new(2.0, 1.0), ComplexNum::new(0.5, 0.0)],
            vec![ComplexNum::new(-1.0, 0.0), ComplexNum::new(0.0, 3.0)],
        ];
        let inv = complex_inverse(&m).unwrap();
        let id = complex_matmul(&m, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((z - ComplexNum::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&[vec![2.0, 1.0], vec![1.0, 2.0]]));
        assert!(!is_positive_definite(&[vec![1.0, 2.0], vec![2.0, 1.0]]));
    }
}
