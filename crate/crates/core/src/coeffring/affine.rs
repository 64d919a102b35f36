//! Scalar-valued affine forms over the unknown integration constants.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Which family of integration constant an unknown belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnknownKind {
    C1,
    C2,
    C3,
    C4,
}

/// An integration constant `C_kind^level`. Ordered by level, then kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnknownId {
    pub kind: UnknownKind,
    pub level: u32,
}

impl UnknownId {
    pub fn new(kind: UnknownKind, level: u32) -> Self {
        UnknownId { kind, level }
    }
}

impl Ord for UnknownId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.level, self.kind).cmp(&(other.level, other.kind))
    }
}

impl PartialOrd for UnknownId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UnknownId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^{}", self.kind, self.level)
    }
}

/// How `substitute` treats unknowns missing from the assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// Every unknown must be assigned.
    Strict,
    /// Unassigned unknowns stay symbolic.
    Partial,
}

pub type Assignment = BTreeMap<UnknownId, Scalar>;

/// `constant + sum_k coeff_k * C_k`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    constant: Scalar,
    terms: BTreeMap<UnknownId, Scalar>,
}

impl AffineForm {
    pub fn zero() -> Self {
        AffineForm::constant(Scalar::zero())
    }

    pub fn constant(c: Scalar) -> Self {
        AffineForm {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn unknown(id: UnknownId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, Scalar::one());
        AffineForm {
            constant: Scalar::zero(),
            terms,
        }
    }

    pub fn constant_part(&self) -> &Scalar {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<UnknownId, Scalar> {
        &self.terms
    }

    pub fn coefficient_of(&self, id: &UnknownId) -> Scalar {
        self.terms.get(id).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    /// True when no unknowns appear.
    pub fn is_known(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &UnknownId> {
        self.terms.keys()
    }

    fn merge(&self, rhs: &AffineForm, sign: bool) -> Result<AffineForm> {
        let constant = if sign {
            self.constant.checked_add(&rhs.constant)?
        } else {
            self.constant.checked_sub(&rhs.constant)?
        };
        let mut terms = self.terms.clone();
        for (id, c) in &rhs.terms {
            let entry = terms.entry(*id).or_insert_with(Scalar::zero);
            *entry = if sign {
                entry.checked_add(c)?
            } else {
                entry.checked_sub(c)?
            };
            if entry.is_zero() {
                terms.remove(id);
            }
        }
        Ok(AffineForm { constant, terms })
    }

    pub fn checked_add(&self, rhs: &AffineForm) -> Result<AffineForm> {
        self.merge(rhs, true)
    }

    pub fn checked_sub(&self, rhs: &AffineForm) -> Result<AffineForm> {
        self.merge(rhs, false)
    }

    /// Product, allowed only when at least one side carries no unknowns.
    pub fn checked_mul(&self, rhs: &AffineForm) -> Result<AffineForm> {
        match (self.is_known(), rhs.is_known()) {
            (true, _) => rhs.checked_scale(&self.constant),
            (_, true) => self.checked_scale(&rhs.constant),
            _ => Err(Error::NonlinearInUnknowns),
        }
    }

    pub fn checked_scale(&self, s: &Scalar) -> Result<AffineForm> {
        if s.is_zero() {
            return Ok(AffineForm::zero());
        }
        let constant = self.constant.checked_mul(s)?;
        let mut terms = BTreeMap::new();
        for (id, c) in &self.terms {
            terms.insert(*id, c.checked_mul(s)?);
        }
        Ok(AffineForm { constant, terms })
    }

    pub fn scale(&self, s: &Scalar) -> AffineForm {
        self.checked_scale(s)
            .unwrap_or_else(|e| panic!("affine scaling: {e}"))
    }

    pub fn scale_rational(&self, r: &Rational) -> AffineForm {
        self.scale(&Scalar::rational(r.clone()))
    }

    pub fn neg(&self) -> AffineForm {
        self.scale(&Scalar::int(-1))
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<AffineForm> {
        let mut out = AffineForm::constant(self.constant.clone());
        for (id, c) in &self.terms {
            match assignment.get(id) {
                Some(v) => out.constant = out.constant.checked_add(&c.checked_mul(v)?)?,
                None if mode == Substitution::Partial => {
                    out.terms.insert(*id, c.clone());
                }
                None => return Err(Error::UnboundUnknown(*id)),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (id, c) in &self.terms {
            write!(f, " + {c}*{id}")?;
        }
        Ok(())
    }
}
