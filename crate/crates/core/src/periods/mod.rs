//! Numerical oracle: polynomial roots, hyperelliptic period matrices in genus
//! one and two, AGM elliptic integrals, and finite differences of the Riemann
//! matrix along leaf directions compared against the exact cubic.

pub mod agm;
pub mod fd;
pub mod quad;
pub mod riemann;
pub mod roots;

pub use agm::{agm, agm_elliptic_k, quadrature_elliptic_k};
pub use fd::{calibrate_and_compare, dtau_fd, CalibrationReport, FdResult, InstanceReport};
pub use riemann::{
    period_matrix, period_matrix_for_forms, reduce_genus_one, BranchConfiguration, PeriodOptions, RiemannMatrix,
};
pub use roots::complex_roots;
