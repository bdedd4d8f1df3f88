//! Numerical evaluation of the generalized Bessel function and the Dunkl
//! kernel attached to the rank-two root system B2, through every available
//! representation: the double-integral form over the square, Laplace-type
//! integrals against explicit densities supported on the convex hull of a
//! group orbit, and the differential recursion through shifted multiplicity
//! values. A validation harness cross-checks all representations against
//! each other on seeded random inputs.

pub mod dunkl;
pub mod error;
pub mod gbf;
pub mod point;
pub mod quadrature;
pub mod specfun;
pub mod validate;

pub use error::{Error, Result};
pub use gbf::Multiplicity;
pub use point::PlanarPoint;
pub use quadrature::EvalResult;
