//! Concrete computations for the meromorphic Hitchin system on the projective
//! line: exact algebra, Lie-type tables, the Hitchin map and leaf bases, jet
//! schemes, two-chart Čech hypercohomology with its duality pairing and
//! Poisson map, the quadratic-residue cubic for rank-one spectral covers, and
//! a numerical period-matrix oracle that validates the cubic.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cech;
pub mod cubic;
pub mod error;
pub mod hitchin;
pub mod jets;
pub mod job;
pub mod lie;
pub mod periods;
pub mod suite;

pub use algebra::{ComplexNum, ExactPoly, LaurentSeries, MultiPoly, Rational};
pub use cech::{HyperCocycle, HyperCohomologyReport};
pub use cubic::{CameralDataA1, CubicTensor, HolomorphicForm, LeafTangent};
pub use error::{Error, Result};
pub use hitchin::{DivisorP1, HiggsFieldP1, LeafBase, LineBundleP1};
pub use jets::{AffineVariety, JetScheme};
pub use lie::{Family, SimpleTypeInfo, TracelessMatrix};
pub use periods::{BranchConfiguration, RiemannMatrix};
