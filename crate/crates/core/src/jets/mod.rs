//! Polynomial systems and their jet schemes.
//!
//! Substituting `x_i = sum_k y_{i,k} t^k` into each generator and expanding
//! modulo `t^{n+1}` gives the defining equations of the n-th jet scheme.

mod parser;
mod scheme;

pub use parser::{parse_system, ParseError};
pub use scheme::{jet_equations, truncation_check, AffineVariety, JetScheme};
