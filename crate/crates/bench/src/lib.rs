//! Fixed inputs shared by the benchmarks.

use hitchin_core::algebra::rat;
use hitchin_core::cubic::CameralDataA1;
use hitchin_core::{DivisorP1, ExactPoly, HiggsFieldP1, TracelessMatrix};
use num_traits::Zero;

/// `b = (z^2 - 1)(z^2 - 4)` on `D = 4[0]`.
pub fn genus_one_leaf() -> CameralDataA1 {
    CameralDataA1::new(ExactPoly::from_i64s(&[4, 0, -5, 0, 1]), DivisorP1::single(rat(0, 1), 4).unwrap()).unwrap()
}

/// Six real branch points on `D = 5[0]`.
pub fn genus_two_leaf() -> CameralDataA1 {
    let b = ExactPoly::from_roots(&[-3, -2, -1, 1, 2, 4].map(|r| rat(r, 1)));
    CameralDataA1::new(b, DivisorP1::single(rat(0, 1), 5).unwrap()).unwrap()
}

/// A regular `sl_2` field of degree 2 whose spectral curve is [`genus_one_leaf`].
pub fn a1_field() -> HiggsFieldP1 {
    let m = TracelessMatrix::new(vec![
        vec![ExactPoly::zero(), ExactPoly::from_i64s(&[-1, 0, 1])],
        vec![ExactPoly::from_i64s(&[-4, 0, 1]), ExactPoly::zero()],
    ])
    .unwrap();
    HiggsFieldP1::new(DivisorP1::single(rat(0, 1), 4).unwrap(), m).unwrap()
}

/// Dense `sl_3` field of degree 3.
pub fn a2_field() -> HiggsFieldP1 {
    let p = ExactPoly::from_i64s;
    let m = TracelessMatrix::new(vec![
        vec![p(&[1, 2, 0, 1]), p(&[0, 1, -1]), p(&[3, 0, 0, 1])],
        vec![p(&[2, -1]), p(&[-2, 1, 1]), p(&[1, 1, 1, 1])],
        vec![p(&[0, 0, 1]), p(&[5]), p(&[1, -3, -1, -1])],
    ])
    .unwrap();
    HiggsFieldP1::new(DivisorP1::new(vec![(rat(0, 1), 4), (rat(1, 1), 1)]).unwrap(), m).unwrap()
}
