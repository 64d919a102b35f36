use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::matrix::MatrixS;
use crate::coeffring::{Assignment, CoeffElem, RingKind, Scalar, Substitution, UnknownId};
use crate::error::{Error, Result};

/// `sum_k C_k(x) d^k` with `s x s` matrix coefficients.
///
/// Matrices that are exactly zero are never stored, so equality is term-wise.
/// Laurent coefficients that vanish only through their truncation are kept:
/// they carry the `O(x^T)` bound that certifies the vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    size: usize,
    kind: RingKind,
    terms: BTreeMap<u32, MatrixS>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl DiffOperator {
    pub fn zero(size: usize, kind: RingKind) -> Self {
        DiffOperator {
            size,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(size: usize, kind: RingKind) -> Self {
        DiffOperator::from_matrix(MatrixS::identity(size, kind), 0)
    }

    /// `c * Id`.
    pub fn scalar(size: usize, kind: RingKind, c: Scalar) -> Self {
        DiffOperator::from_matrix(MatrixS::scalar(size, kind, c), 0)
    }

    /// `m d^degree`.
    pub fn from_matrix(m: MatrixS, degree: u32) -> Self {
        let mut op = DiffOperator::zero(m.size(), m.kind());
        op.insert(degree, m);
        op
    }

    /// `Id d`.
    pub fn d(size: usize, kind: RingKind) -> Self {
        DiffOperator::from_matrix(MatrixS::identity(size, kind), 1)
    }

    /// Builds from `(degree, matrix)` pairs; repeated degrees accumulate.
    pub fn from_terms(size: usize, kind: RingKind, terms: Vec<(u32, MatrixS)>) -> Result<Self> {
        let mut op = DiffOperator::zero(size, kind);
        for (deg, m) in terms {
            op = op.op_add(&DiffOperator::from_matrix(m, deg))?;
        }
        Ok(op)
    }

    fn insert(&mut self, degree: u32, m: MatrixS) {
        if m.is_exact_zero() {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, m);
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Highest degree with a stored matrix; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms
            .iter()
            .rev()
            .find(|(_, m)| !m.is_zero())
            .map(|(d, _)| *d)
    }

    pub fn coefficient(&self, degree: u32) -> MatrixS {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| MatrixS::zero(self.size, self.kind))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &MatrixS)> {
        self.terms.iter().map(|(d, m)| (*d, m))
    }

    /// Zero through the valid truncation of every coefficient.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(MatrixS::is_zero)
    }

    /// Smallest truncation among all Laurent coefficients.
    pub fn min_trunc(&self) -> Option<i64> {
        self.terms.values().filter_map(MatrixS::min_trunc).min()
    }

    pub fn unknowns(&self) -> Vec<UnknownId> {
        let mut out: Vec<UnknownId> = self.terms.values().flat_map(|m| m.unknowns()).collect();
        out.sort();
        out.dedup();
        out
    }

    fn check(&self, rhs: &DiffOperator) -> Result<()> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch(self.size, rhs.size));
        }
        if self.kind != rhs.kind {
            return Err(Error::MixedRing);
        }
        Ok(())
    }

    pub fn op_add(&self, rhs: &DiffOperator) -> Result<DiffOperator> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (d, m) in &rhs.terms {
            let sum = match out.terms.get(d) {
                Some(cur) => cur.checked_add(m)?,
                None => m.clone(),
            };
            out.insert(*d, sum);
        }
        Ok(out)
    }

    pub fn op_sub(&self, rhs: &DiffOperator) -> Result<DiffOperator> {
        self.op_add(&rhs.neg())
    }

    pub fn neg(&self) -> DiffOperator {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> DiffOperator {
        let mut out = DiffOperator::zero(self.size, self.kind);
        for (d, m) in &self.terms {
            out.insert(*d, m.scale(s));
        }
        out
    }

    /// Noncommutative product, using `d^k f = sum_j binom(k, j) f^(j) d^(k-j)`.
    pub fn op_mul(&self, rhs: &DiffOperator) -> Result<DiffOperator> {
        self.check(rhs)?;
        let max_left = self.terms.keys().next_back().copied().unwrap_or(0);
        let mut acc: BTreeMap<u32, MatrixS> = BTreeMap::new();
        for (j, q) in &rhs.terms {
            // successive derivatives of Q_j
            let mut derivs = vec![q.clone()];
            for _ in 0..max_left {
                let next = derivs.last().unwrap().derivative();
                derivs.push(next);
            }
            for (i, p) in &self.terms {
                for l in 0..=*i {
                    let dq = &derivs[l as usize];
                    if dq.is_exact_zero() {
                        continue;
                    }
                    let c = Scalar::rational(BigRational::from_integer(binomial(*i, l)));
                    let prod = p.checked_mul(dq)?.scale(&c);
                    let deg = i - l + j;
                    let slot = match acc.remove(&deg) {
                        Some(cur) => cur.checked_add(&prod)?,
                        None => prod,
                    };
                    acc.insert(deg, slot);
                }
            }
        }
        let mut out = DiffOperator::zero(self.size, self.kind);
        for (d, m) in acc {
            out.insert(d, m);
        }
        Ok(out)
    }

    /// `PQ - QP`.
    pub fn op_commutator(&self, rhs: &DiffOperator) -> Result<DiffOperator> {
        self.op_mul(rhs)?.op_sub(&rhs.op_mul(self)?)
    }

    pub fn op_pow(&self, k: u32) -> Result<DiffOperator> {
        let mut acc = DiffOperator::identity(self.size, self.kind);
        for _ in 0..k {
            acc = acc.op_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply every coefficient on the left by a matrix.
    pub fn left_mul_matrix(&self, m: &MatrixS) -> Result<DiffOperator> {
        DiffOperator::from_matrix(m.clone(), 0).op_mul(self)
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<DiffOperator> {
        let mut out = DiffOperator::zero(self.size, self.kind);
        for (d, m) in &self.terms {
            out.insert(*d, m.substitute(assignment, mode)?);
        }
        Ok(out)
    }

    /// Entrywise image; the ring tag follows the mapped entries.
    pub fn map_entries(&self, f: impl Fn(&CoeffElem) -> CoeffElem) -> DiffOperator {
        let mapped: Vec<(u32, MatrixS)> = self.terms.iter().map(|(d, m)| (*d, m.map(&f))).collect();
        let kind = mapped.first().map_or(self.kind, |(_, m)| m.kind());
        let mut out = DiffOperator::zero(self.size, kind);
        for (d, m) in mapped {
            out.insert(d, m);
        }
        out
    }

    /// First nonzero coordinate `(degree, row, col, exponent)`, scanning degrees
    /// ascending, then entries row-major, then exponents ascending.
    pub fn first_nonzero(&self) -> Option<Localization> {
        for (d, m) in &self.terms {
            for ((i, j), e) in m.entries() {
                if let Some((exp, c)) = e.terms().into_iter().next() {
                    return Some(Localization {
                        degree: *d,
                        row: i,
                        col: j,
                        exponent: exp,
                        value: c.to_string(),
                    });
                }
            }
        }
        None
    }
}

/// Where a nonzero coefficient sits inside an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    pub degree: u32,
    pub row: usize,
    pub col: usize,
    pub exponent: i64,
    pub value: String,
}

impl fmt::Display for Localization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry=({},{}) degree={} exponent={} value={}",
            self.row, self.col, self.degree, self.exponent, self.value
        )
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (d, m) in self.terms.iter().rev() {
            writeln!(f, "d^{d}:")?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
