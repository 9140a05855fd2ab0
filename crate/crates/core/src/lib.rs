pub mod analysis;
pub mod cache;
pub mod error;
pub mod linalg;
pub mod loci;
pub mod padic;
pub mod roots;
pub mod series;
pub mod steinberg;

pub use error::{Error, Result};
pub use padic::{Padic, PrecisionPolicy};

/// Exact rationals used by the Steinberg solver.
pub type Rational = num_rational::BigRational;
