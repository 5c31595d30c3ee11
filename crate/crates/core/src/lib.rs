//! Exact symbolic kernel for the computable core of generalized complex
//! geometry: Gaussian-rational polynomial arithmetic on coordinate charts,
//! exterior algebra and spinor calculus, Courant brackets, holomorphic
//! Poisson blow-up lifts and Lie algebra degeneracy analysis.
//!
//! Everything in this crate is exact: scalars are Gaussian rationals and all
//! identities are decided as polynomial or rational-function equalities.
//! Floating-point verification lives in the companion `gcx-cut` crate.

pub mod blowup;
pub mod chart;
pub mod error;
pub mod exterior;
pub mod gca;
pub mod ideal;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod sampling;
pub mod scalar;

pub use chart::Chart;
pub use error::CoreError;
pub use exterior::{Form, PolyVector};
pub use ideal::CoordIdeal;
pub use poly::Poly;
pub use ratfn::RationalFn;
pub use scalar::GaussRat;
