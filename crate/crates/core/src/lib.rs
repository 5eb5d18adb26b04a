#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod cheeger;
pub mod complex;
mod error;
pub mod flows;
pub mod generate;
pub mod linalg;
pub mod lp;
pub mod morse;
pub mod plmorse;
pub mod sampling;
pub mod signed;
pub mod spectral;
pub mod variational;

pub use complex::{Chain, Cochain, OrientedSimplex, Simplex, SimplicialComplex};
pub use error::{Error, Result};

/// Vertex count above which exhaustive Cheeger searches refuse to run.
pub const DEFAULT_VERTEX_BUDGET: usize = 12;

/// Exact rational scalar used for weights and exact Laplacian entries.
pub type Rational = num_rational::Ratio<i64>;

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
