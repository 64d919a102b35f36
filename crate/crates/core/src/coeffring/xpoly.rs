//! Sparse polynomials in `x` with affine-form coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::affine::{AffineForm, Assignment, Substitution};
use super::scalar::{rat, Scalar};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPolynomial {
    coeffs: BTreeMap<u32, AffineForm>,
}

impl XPolynomial {
    pub fn zero() -> Self {
        XPolynomial::default()
    }

    pub fn constant(c: AffineForm) -> Self {
        XPolynomial::monomial(c, 0)
    }

    pub fn monomial(c: AffineForm, exp: u32) -> Self {
        let mut p = XPolynomial::zero();
        p.set(exp, c);
        p
    }

    /// Builds from `(exponent, scalar)` pairs; repeated exponents accumulate.
    pub fn from_scalars<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut p = XPolynomial::zero();
        for (e, c) in terms {
            let cur = p.coeff(e);
            p.set(e, cur.checked_add(&AffineForm::constant(c)).expect("scalar sum"));
        }
        p
    }

    pub(crate) fn set(&mut self, exp: u32, c: AffineForm) {
        if c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: u32) -> AffineForm {
        self.coeffs.get(&exp).cloned().unwrap_or_else(AffineForm::zero)
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &AffineForm)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn checked_add(&self, rhs: &XPolynomial) -> Result<XPolynomial> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            let s = out.coeff(*e).checked_add(c)?;
            out.set(*e, s);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &XPolynomial) -> Result<XPolynomial> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            let s = out.coeff(*e).checked_sub(c)?;
            out.set(*e, s);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &XPolynomial) -> Result<XPolynomial> {
        let mut acc: BTreeMap<u32, AffineForm> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let p = c1.checked_mul(c2)?;
                let slot = acc.entry(e1 + e2).or_insert_with(AffineForm::zero);
                *slot = slot.checked_add(&p)?;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(XPolynomial { coeffs: acc })
    }

    pub fn scale(&self, s: &Scalar) -> XPolynomial {
        let mut out = XPolynomial::zero();
        for (e, c) in &self.coeffs {
            out.set(*e, c.scale(s));
        }
        out
    }

    pub fn derivative(&self) -> XPolynomial {
        let mut out = XPolynomial::zero();
        for (e, c) in &self.coeffs {
            if *e > 0 {
                out.set(e - 1, c.scale_rational(&rat(*e as i64)));
            }
        }
        out
    }

    /// Power-rule antiderivative plus `constant` as the `x^0` term.
    pub fn antiderivative(&self, constant: AffineForm) -> XPolynomial {
        let mut out = XPolynomial::constant(constant);
        for (e, c) in &self.coeffs {
            let inv = num_rational::BigRational::new(1.into(), (*e as i64 + 1).into());
            out.set(e + 1, c.scale_rational(&inv));
        }
        out
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<XPolynomial> {
        let mut out = XPolynomial::zero();
        for (e, c) in &self.coeffs {
            out.set(*e, c.substitute(assignment, mode)?);
        }
        Ok(out)
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("[{c}]x^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
