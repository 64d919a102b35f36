//! Noncommutative algebra of matrix ordinary differential operators.

mod diffop;
mod matrix;
mod structured;

pub use diffop::{DiffOperator, Localization};
pub use matrix::MatrixS;
pub use structured::StructuredL;
