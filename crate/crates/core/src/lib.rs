//! Li coefficients λ_n computed three ways (zero sums, Stieltjes/arithmetic
//! data, and the L² norm of the model-space function G_n) together with the
//! special functions, zero finder and quadrature they rest on.

pub mod cli;
pub mod error;
pub mod li;
pub mod modelspace;
pub mod quad;
pub mod special;
pub mod stieltjes;
pub mod sum;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// The universal scalar.
pub type ComplexValue = Complex64;
