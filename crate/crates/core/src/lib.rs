//! Exact spectral tools for continuous-time quantum walks on weighted graphs.
//!
//! Decisions (cospectrality, strong cospectrality, perfect state transfer,
//! equality cases) are made with exact rational arithmetic. Floating point is
//! used for certified root refinement, eigenvalue-gap certificates and the
//! walk simulator that cross-checks every transfer verdict.

pub mod error;
pub mod gapcert;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod pst;
pub mod scan;
pub mod scalar;
pub mod spectra;
pub mod walksim;

pub use error::{Error, Result};
pub use graph::{EdgeRef, Graph};
pub use poly::ratfunc::RatFunc;
pub use poly::roots::RootBox;
pub use poly::Poly;
pub use scalar::Scalar;

/// Exact weights and coefficients.
pub type Rational = num_rational::BigRational;
/// Exact polynomials.
pub type QPoly = Poly<Rational>;
pub type QRatFunc = RatFunc<Rational>;
pub type RealPoly = Poly<f64>;
pub type RealPoly32 = Poly<f32>;
