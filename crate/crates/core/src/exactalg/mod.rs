//! Exact scalars over ℚ and F_p, and dense matrices with exact rank and kernel.

mod field;
mod matrix;

pub use field::{FieldSpec, Scalar};
pub use matrix::{Echelon, Matrix};
