//! Truncated Laurent series in `x` with affine-form coefficients.
//!
//! A series is either exact (a Laurent polynomial, `trunc == None`) or known
//! only below `x^trunc`. Arithmetic tracks the tightest valid truncation: for
//! products the result is known below `min(T_a + v_b, T_b + v_a)` where `v` is
//! the valuation.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::affine::{AffineForm, Assignment, Substitution};
use super::scalar::{rat, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurent {
    /// Exponent of `coeffs[0]`. Zero for the zero series.
    low: i64,
    /// First and last entries are nonzero, or the vector is empty.
    coeffs: Vec<AffineForm>,
    /// Exponents `>= trunc` are unknown. `None` means exact.
    trunc: Option<i64>,
}

fn min_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn add_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

impl TruncatedLaurent {
    pub fn zero(trunc: Option<i64>) -> Self {
        TruncatedLaurent {
            low: 0,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn exact_zero() -> Self {
        TruncatedLaurent::zero(None)
    }

    /// Coefficients at or beyond `trunc` are discarded.
    pub fn from_terms<I: IntoIterator<Item = (i64, AffineForm)>>(
        terms: I,
        trunc: Option<i64>,
    ) -> Self {
        let mut map: BTreeMap<i64, AffineForm> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.is_some_and(|t| e >= t) {
                continue;
            }
            let slot = map.entry(e).or_insert_with(AffineForm::zero);
            *slot = slot.checked_add(&c).expect("coefficient sum");
        }
        map.retain(|_, c| !c.is_zero());
        let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
            return TruncatedLaurent::zero(trunc);
        };
        let mut coeffs = vec![AffineForm::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        TruncatedLaurent {
            low: lo,
            coeffs,
            trunc,
        }
    }

    pub fn from_scalars<I: IntoIterator<Item = (i64, Scalar)>>(terms: I, trunc: Option<i64>) -> Self {
        TruncatedLaurent::from_terms(
            terms.into_iter().map(|(e, c)| (e, AffineForm::constant(c))),
            trunc,
        )
    }

    pub fn monomial(c: AffineForm, exp: i64, trunc: Option<i64>) -> Self {
        TruncatedLaurent::from_terms([(exp, c)], trunc)
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; for a zero series the
    /// truncation (or `None` when exactly zero).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.trunc
        } else {
            Some(self.low)
        }
    }

    /// Lowest stored exponent, `None` for the zero series.
    pub fn low(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Whether the coefficient of `x^exp` is determined.
    pub fn is_known_at(&self, exp: i64) -> bool {
        self.trunc.is_none_or(|t| exp < t)
    }

    /// Coefficient of `x^exp`; zero outside the stored range.
    pub fn coeff(&self, exp: i64) -> AffineForm {
        if self.coeffs.is_empty() || exp < self.low {
            return AffineForm::zero();
        }
        self.coeffs
            .get((exp - self.low) as usize)
            .cloned()
            .unwrap_or_else(AffineForm::zero)
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &AffineForm)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (low + i as i64, c))
    }

    /// Restrict to a smaller truncation.
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = min_bound(self.trunc, Some(trunc));
        TruncatedLaurent::from_terms(self.iter().map(|(e, c)| (e, c.clone())), t)
    }

    fn combine(&self, rhs: &Self, sub: bool) -> Result<Self> {
        let trunc = min_bound(self.trunc, rhs.trunc);
        let mut map: BTreeMap<i64, AffineForm> = BTreeMap::new();
        for (e, c) in self.iter() {
            map.insert(e, c.clone());
        }
        for (e, c) in rhs.iter() {
            let slot = map.entry(e).or_insert_with(AffineForm::zero);
            *slot = if sub { slot.checked_sub(c)? } else { slot.checked_add(c)? };
        }
        Ok(TruncatedLaurent::from_terms(map, trunc))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, false)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, true)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if (self.is_zero() && self.is_exact()) || (rhs.is_zero() && rhs.is_exact()) {
            return Ok(TruncatedLaurent::exact_zero());
        }
        let trunc = min_bound(
            add_bound(self.trunc, rhs.valuation()),
            add_bound(rhs.trunc, self.valuation()),
        );
        let mut map: BTreeMap<i64, AffineForm> = BTreeMap::new();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                let e = e1 + e2;
                if trunc.is_some_and(|t| e >= t) {
                    continue;
                }
                let p = c1.checked_mul(c2)?;
                let slot = map.entry(e).or_insert_with(AffineForm::zero);
                *slot = slot.checked_add(&p)?;
            }
        }
        Ok(TruncatedLaurent::from_terms(map, trunc))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        TruncatedLaurent::from_terms(self.iter().map(|(e, c)| (e, c.scale(s))), self.trunc)
    }

    pub fn derivative(&self) -> Self {
        TruncatedLaurent::from_terms(
            self.iter()
                .map(|(e, c)| (e - 1, c.scale_rational(&rat(e)))),
            self.trunc.map(|t| t - 1),
        )
    }

    /// Power-rule antiderivative with `constant` as the `x^0` term. The `x^-1`
    /// coefficient must be certified zero.
    pub fn antiderivative(&self, constant: AffineForm) -> Result<Self> {
        if !self.is_known_at(-1) {
            return Err(Error::TruncationTooShort(format!(
                "x^-1 coefficient needed for integration, series known only below x^{}",
                self.trunc.unwrap_or_default()
            )));
        }
        if !self.coeff(-1).is_zero() {
            return Err(Error::NonIntegrableTerm);
        }
        let terms = self
            .iter()
            .map(|(e, c)| (e + 1, c.scale_rational(&BigRational::new(1.into(), (e + 1).into()))))
            .chain(std::iter::once((0, constant)));
        Ok(TruncatedLaurent::from_terms(terms, self.trunc.map(|t| t + 1)))
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in self.iter() {
            terms.push((e, c.substitute(assignment, mode)?));
        }
        Ok(TruncatedLaurent::from_terms(terms, self.trunc))
    }
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(e, c)| format!("[{c}]x^{e}")).collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        if let Some(t) = self.trunc {
            write!(f, " + O(x^{t})")?;
        }
        Ok(())
    }
}
