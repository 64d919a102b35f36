//! Exact construction of commuting pairs of 2x2 matrix ordinary differential
//! operators `L` (order 2) and `M` (order `2g`).
//!
//! The crate is organised bottom-up:
//!
//! * [`coeffring`]: rationals, the quadratic extension `Q(sqrt d)`, affine
//!   forms in unknown integration constants, polynomial and truncated-Laurent
//!   coefficient rings, and the Weierstrass expansion.
//! * [`operator`]: the noncommutative algebra of matrix differential operators.
//! * [`reduction`]: `[L, A d + B]` in closed form and its reduction modulo `L`.
//! * [`recurrence`]: the step-by-step construction of `M`, the constant solve,
//!   and assembly.
//! * [`families`]: the polynomial and elliptic families and two worked examples.
//! * [`spectral`]: recovery and analysis of the spectral curve `R(z, w) = 0`.
//! * [`io`]: the versioned text document format for operators.
//! * [`cli`]: the command implementations behind the `commuting-ops` binary.

pub mod cli;
pub mod coeffring;
pub mod error;
pub mod families;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod recurrence;
pub mod reduction;
pub mod spectral;

pub use error::{Error, Result};
