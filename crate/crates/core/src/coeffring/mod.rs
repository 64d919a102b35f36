//! Exact scalar and coefficient-ring arithmetic.
//!
//! Layers, bottom-up: [`Rational`] and [`Scalar`] (an element of `Q(sqrt d)`),
//! [`AffineForm`] (linear in the unknown integration constants), and the two
//! coefficient rings [`XPolynomial`] and [`TruncatedLaurent`] wrapped by
//! [`CoeffElem`].

mod affine;
mod elem;
mod laurent;
mod scalar;
mod weierstrass;
mod xpoly;

pub use affine::{AffineForm, Assignment, Substitution, UnknownId, UnknownKind};
pub use elem::{CoeffElem, RingKind};
pub use laurent::TruncatedLaurent;
pub use scalar::{
    format_rational, parse_rational, rat, ratio, rational_sqrt, sqrt_in_field, QuadField,
    Rational, Scalar,
};
pub use weierstrass::weierstrass_p;
pub use xpoly::XPolynomial;
