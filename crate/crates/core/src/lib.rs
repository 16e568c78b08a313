//! Numerical and exact-arithmetic toolkit around the error term of the
//! Dirichlet divisor problem.
//!
//! The crate is organized around the pipeline
//!
//! * [`divisor`] — sieved divisor function `d(n)`, the summatory function
//!   `D(x)`, and the error term `Δ(x) = D(x) − x·ln x − (2γ−1)x`;
//! * [`radical`] — exact arithmetic on integer combinations of square roots
//!   (canonical kernel form, certified sign/zero tests);
//! * [`series`] — enumeration of square-root-balanced tuples and the
//!   truncated singular series `s_{k;ℓ}(f; y)` with the derived main-term
//!   coefficients;
//! * [`voronoi`] — the truncated oscillating-series expansion of `Δ(x)` and
//!   the remainder's mean square;
//! * [`moments`] — piecewise Gauss–Legendre power moments of `Δ` and growth
//!   fits against the predicted main terms;
//! * [`dio`] — exact counting of square-root Diophantine inequalities
//!   (meet-in-the-middle with certified boundary resolution);
//! * [`expsum`] — the exponential sum `S(x;N) = Σ_{n∼N} e(x√n)`, its moment
//!   bounds, and the compact smooth bump with explicit Fourier transform.
//!
//! Low-level numeric kernels (error-free transforms, compensated summation,
//! quadrature rules, slope fits) live in [`numeric`] and are generic over the
//! scalar type where that is meaningful; the number-theoretic layers work on
//! the concrete [`Real`] alias since they mix exact integer arithmetic with
//! extended-precision phase reduction that only makes sense at f64 width.

// argument validation uses negated float comparisons on purpose: `!(x >= 1.0)`
// also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub(crate) mod cacheio;
pub mod dio;
pub mod divisor;
pub mod error;
pub mod expsum;
pub mod hp;
pub mod moments;
pub mod numeric;
pub mod radical;
pub mod series;
pub mod voronoi;

pub use error::{Error, Result};

/// Working floating-point scalar of the numeric layers.
pub type Real = f64;

/// Gauss–Legendre rule instantiated at the working scalar.
pub type GaussLegendreRule = numeric::quadrature::GaussLegendre<Real>;

/// Compensated accumulator instantiated at the working scalar.
pub type CompensatedSum = numeric::kahan::Neumaier<Real>;

/// Euler's constant γ, nearest f64.
pub const EULER_GAMMA: Real = 0.577_215_664_901_532_9;
