//! Exact dense linear algebra over prime fields.

pub(crate) mod echelon;
mod field;
pub(crate) mod kernel;
mod matrix;
pub mod poly;
mod subspace;

pub use field::{check_modulus, is_prime, Fp};
pub use matrix::{generalized_eigenspace, solve, MatFp, Rref};
pub use subspace::Subspace;
