//! Shared numeric kernels: error-free transforms, compensated summation,
//! quadrature rules, slope fits, zeta values.

pub mod dd;
pub mod fit;
pub mod kahan;
pub mod quadrature;
pub mod zeta;

pub use dd::Dd;
pub use kahan::{DdAcc, Neumaier};
