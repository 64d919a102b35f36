use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::affine::{AffineForm, Assignment, Substitution, UnknownId};
use super::laurent::TruncatedLaurent;
use super::scalar::Scalar;
use super::xpoly::XPolynomial;
use crate::error::{Error, Result};

/// Which coefficient ring an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Polynomial,
    Laurent,
}

/// A coefficient of a differential operator.
///
/// The std operator impls panic on ring misuse (mixed tags, nonlinear
/// products); the `checked_*` methods report it instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffElem {
    Poly(XPolynomial),
    Laurent(TruncatedLaurent),
}

impl CoeffElem {
    pub fn zero(kind: RingKind) -> Self {
        match kind {
            RingKind::Polynomial => CoeffElem::Poly(XPolynomial::zero()),
            RingKind::Laurent => CoeffElem::Laurent(TruncatedLaurent::exact_zero()),
        }
    }

    pub fn constant(kind: RingKind, c: Scalar) -> Self {
        CoeffElem::affine_constant(kind, AffineForm::constant(c))
    }

    pub fn affine_constant(kind: RingKind, c: AffineForm) -> Self {
        match kind {
            RingKind::Polynomial => CoeffElem::Poly(XPolynomial::constant(c)),
            RingKind::Laurent => CoeffElem::Laurent(TruncatedLaurent::monomial(c, 0, None)),
        }
    }

    pub fn one(kind: RingKind) -> Self {
        CoeffElem::constant(kind, Scalar::one())
    }

    /// `c x^exp` as a polynomial.
    pub fn poly_monomial(c: Scalar, exp: u32) -> Self {
        CoeffElem::Poly(XPolynomial::monomial(AffineForm::constant(c), exp))
    }

    /// Polynomial from `(exponent, coefficient)` pairs.
    pub fn poly<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        CoeffElem::Poly(XPolynomial::from_scalars(terms))
    }

    pub fn unknown(kind: RingKind, id: UnknownId) -> Self {
        CoeffElem::affine_constant(kind, AffineForm::unknown(id))
    }

    pub fn kind(&self) -> RingKind {
        match self {
            CoeffElem::Poly(_) => RingKind::Polynomial,
            CoeffElem::Laurent(_) => RingKind::Laurent,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffElem::Poly(p) => p.is_zero(),
            CoeffElem::Laurent(l) => l.is_zero(),
        }
    }

    pub fn as_poly(&self) -> Option<&XPolynomial> {
        match self {
            CoeffElem::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&TruncatedLaurent> {
        match self {
            CoeffElem::Laurent(l) => Some(l),
            _ => None,
        }
    }

    /// Coefficient of `x^exp` (zero where nothing is stored).
    pub fn coeff(&self, exp: i64) -> AffineForm {
        match self {
            CoeffElem::Poly(p) if exp >= 0 => p.coeff(exp as u32),
            CoeffElem::Poly(_) => AffineForm::zero(),
            CoeffElem::Laurent(l) => l.coeff(exp),
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> Vec<(i64, AffineForm)> {
        match self {
            CoeffElem::Poly(p) => p.iter().map(|(e, c)| (e as i64, c.clone())).collect(),
            CoeffElem::Laurent(l) => l.iter().map(|(e, c)| (e, c.clone())).collect(),
        }
    }

    /// Every unknown that occurs in some coefficient.
    pub fn unknowns(&self) -> Vec<UnknownId> {
        let mut out: Vec<UnknownId> = self
            .terms()
            .iter()
            .flat_map(|(_, c)| c.unknowns().copied().collect::<Vec<_>>())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Truncation of a Laurent element; `None` for polynomials and exact series.
    pub fn trunc(&self) -> Option<i64> {
        match self {
            CoeffElem::Poly(_) => None,
            CoeffElem::Laurent(l) => l.trunc(),
        }
    }

    pub fn checked_add(&self, rhs: &CoeffElem) -> Result<CoeffElem> {
        match (self, rhs) {
            (CoeffElem::Poly(a), CoeffElem::Poly(b)) => Ok(CoeffElem::Poly(a.checked_add(b)?)),
            (CoeffElem::Laurent(a), CoeffElem::Laurent(b)) => {
                Ok(CoeffElem::Laurent(a.checked_add(b)?))
            }
            _ => Err(Error::MixedRing),
        }
    }

    pub fn checked_sub(&self, rhs: &CoeffElem) -> Result<CoeffElem> {
        match (self, rhs) {
            (CoeffElem::Poly(a), CoeffElem::Poly(b)) => Ok(CoeffElem::Poly(a.checked_sub(b)?)),
            (CoeffElem::Laurent(a), CoeffElem::Laurent(b)) => {
                Ok(CoeffElem::Laurent(a.checked_sub(b)?))
            }
            _ => Err(Error::MixedRing),
        }
    }

    pub fn checked_mul(&self, rhs: &CoeffElem) -> Result<CoeffElem> {
        match (self, rhs) {
            (CoeffElem::Poly(a), CoeffElem::Poly(b)) => Ok(CoeffElem::Poly(a.checked_mul(b)?)),
            (CoeffElem::Laurent(a), CoeffElem::Laurent(b)) => {
                Ok(CoeffElem::Laurent(a.checked_mul(b)?))
            }
            _ => Err(Error::MixedRing),
        }
    }

    pub fn scale(&self, s: &Scalar) -> CoeffElem {
        match self {
            CoeffElem::Poly(p) => CoeffElem::Poly(p.scale(s)),
            CoeffElem::Laurent(l) => CoeffElem::Laurent(l.scale(s)),
        }
    }

    /// Multiply by a rational given as `num/den`.
    pub fn scale_frac(&self, num: i64, den: i64) -> CoeffElem {
        self.scale(&Scalar::frac(num, den))
    }

    pub fn derivative(&self) -> CoeffElem {
        match self {
            CoeffElem::Poly(p) => CoeffElem::Poly(p.derivative()),
            CoeffElem::Laurent(l) => CoeffElem::Laurent(l.derivative()),
        }
    }

    /// Antiderivative with the given integration constant (`None` = zero).
    pub fn antiderivative(&self, constant: Option<UnknownId>) -> Result<CoeffElem> {
        let c = constant.map_or_else(AffineForm::zero, AffineForm::unknown);
        match self {
            CoeffElem::Poly(p) => Ok(CoeffElem::Poly(p.antiderivative(c))),
            CoeffElem::Laurent(l) => Ok(CoeffElem::Laurent(l.antiderivative(c)?)),
        }
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<CoeffElem> {
        match self {
            CoeffElem::Poly(p) => Ok(CoeffElem::Poly(p.substitute(assignment, mode)?)),
            CoeffElem::Laurent(l) => Ok(CoeffElem::Laurent(l.substitute(assignment, mode)?)),
        }
    }

    /// Re-express a polynomial as an exact Laurent series.
    pub fn to_laurent(&self) -> CoeffElem {
        match self {
            CoeffElem::Poly(p) => CoeffElem::Laurent(TruncatedLaurent::from_terms(
                p.iter().map(|(e, c)| (e as i64, c.clone())),
                None,
            )),
            CoeffElem::Laurent(_) => self.clone(),
        }
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffElem::Poly(p) => write!(f, "{p}"),
            CoeffElem::Laurent(l) => write!(f, "{l}"),
        }
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CoeffElem> for &CoeffElem {
            type Output = CoeffElem;
            fn $method(self, rhs: &CoeffElem) -> CoeffElem {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("coefficient arithmetic: {e}"))
            }
        }
        impl $tr<CoeffElem> for CoeffElem {
            type Output = CoeffElem;
            fn $method(self, rhs: CoeffElem) -> CoeffElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CoeffElem> for CoeffElem {
            type Output = CoeffElem;
            fn $method(self, rhs: &CoeffElem) -> CoeffElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<CoeffElem> for &CoeffElem {
            type Output = CoeffElem;
            fn $method(self, rhs: CoeffElem) -> CoeffElem {
                self.$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, checked_add);
elem_binop!(Sub, sub, checked_sub);
elem_binop!(Mul, mul, checked_mul);

impl Neg for &CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        -&self
    }
}
