use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeffring::{Assignment, CoeffElem, RingKind, Scalar, Substitution, UnknownId};
use crate::error::{Error, Result};

/// Dense `s x s` matrix of coefficient-ring elements, all of the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixS {
    size: usize,
    kind: RingKind,
    entries: Vec<CoeffElem>,
}

impl MatrixS {
    pub fn zero(size: usize, kind: RingKind) -> Self {
        MatrixS {
            size,
            kind,
            entries: vec![CoeffElem::zero(kind); size * size],
        }
    }

    pub fn identity(size: usize, kind: RingKind) -> Self {
        MatrixS::scalar(size, kind, Scalar::one())
    }

    /// `c * Id`.
    pub fn scalar(size: usize, kind: RingKind, c: Scalar) -> Self {
        let mut m = MatrixS::zero(size, kind);
        for i in 0..size {
            m.set(i, i, CoeffElem::constant(kind, c.clone()));
        }
        m
    }

    /// `e * Id`.
    pub fn scalar_elem(size: usize, e: &CoeffElem) -> Self {
        let mut m = MatrixS::zero(size, e.kind());
        for i in 0..size {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn diag(entries: Vec<CoeffElem>) -> Result<Self> {
        let kind = entries.first().map(CoeffElem::kind).ok_or(Error::SizeMismatch(0, 1))?;
        let mut m = MatrixS::zero(entries.len(), kind);
        for (i, e) in entries.into_iter().enumerate() {
            if e.kind() != kind {
                return Err(Error::MixedRing);
            }
            m.set(i, i, e);
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<CoeffElem>>) -> Result<Self> {
        let size = rows.len();
        let kind = rows
            .first()
            .and_then(|r| r.first())
            .map(CoeffElem::kind)
            .ok_or(Error::SizeMismatch(0, 1))?;
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::SizeMismatch(row.len(), size));
            }
            for e in row {
                if e.kind() != kind {
                    return Err(Error::MixedRing);
                }
                entries.push(e);
            }
        }
        Ok(MatrixS { size, kind, entries })
    }

    /// 2x2 convenience constructor; panics on mixed rings.
    pub fn two_by_two(a11: CoeffElem, a12: CoeffElem, a21: CoeffElem, a22: CoeffElem) -> Self {
        MatrixS::from_rows(vec![vec![a11, a12], vec![a21, a22]]).expect("uniform 2x2 matrix")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> &CoeffElem {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: CoeffElem) {
        assert_eq!(e.kind(), self.kind, "entry ring does not match matrix ring");
        self.entries[i * self.size + j] = e;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &CoeffElem)> {
        let s = self.size;
        self.entries.iter().enumerate().map(move |(k, e)| ((k / s, k % s), e))
    }

    /// No stored coefficients in any entry (truncated entries may still carry `O(x^T)`).
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CoeffElem::is_zero)
    }

    /// Zero with no truncation information to preserve.
    pub fn is_exact_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.is_zero() && e.trunc().is_none())
    }

    pub fn min_trunc(&self) -> Option<i64> {
        self.entries.iter().filter_map(CoeffElem::trunc).min()
    }

    pub fn unknowns(&self) -> Vec<UnknownId> {
        let mut out: Vec<UnknownId> = self.entries.iter().flat_map(|e| e.unknowns()).collect();
        out.sort();
        out.dedup();
        out
    }

    fn check(&self, rhs: &MatrixS) -> Result<()> {
        if self.size != rhs.size {
            return Err(Error::SizeMismatch(self.size, rhs.size));
        }
        if self.kind != rhs.kind {
            return Err(Error::MixedRing);
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &MatrixS) -> Result<MatrixS> {
        self.check(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixS { entries, ..*self })
    }

    pub fn checked_sub(&self, rhs: &MatrixS) -> Result<MatrixS> {
        self.check(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(MatrixS { entries, ..*self })
    }

    pub fn checked_mul(&self, rhs: &MatrixS) -> Result<MatrixS> {
        self.check(rhs)?;
        let s = self.size;
        let mut out = MatrixS::zero(s, self.kind);
        for i in 0..s {
            for j in 0..s {
                let mut acc = CoeffElem::zero(self.kind);
                for k in 0..s {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if a.is_zero() && a.trunc().is_none() || b.is_zero() && b.trunc().is_none() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(b)?)?;
                }
                out.entries[i * s + j] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise image; the ring tag follows the mapped entries.
    pub fn map(&self, f: impl Fn(&CoeffElem) -> CoeffElem) -> MatrixS {
        self.with_entries(self.entries.iter().map(f).collect())
    }

    pub fn try_map(&self, f: impl Fn(&CoeffElem) -> Result<CoeffElem>) -> Result<MatrixS> {
        Ok(self.with_entries(self.entries.iter().map(f).collect::<Result<_>>()?))
    }

    fn with_entries(&self, entries: Vec<CoeffElem>) -> MatrixS {
        let kind = entries.first().map_or(self.kind, CoeffElem::kind);
        debug_assert!(entries.iter().all(|e| e.kind() == kind), "entries in mixed rings");
        MatrixS {
            size: self.size,
            kind,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> MatrixS {
        self.map(|e| e.scale(s))
    }

    /// Left multiplication by the scalar function `f`.
    pub fn scale_elem(&self, f: &CoeffElem) -> Result<MatrixS> {
        self.try_map(|e| f.checked_mul(e))
    }

    pub fn derivative(&self) -> MatrixS {
        self.map(CoeffElem::derivative)
    }

    pub fn substitute(&self, assignment: &Assignment, mode: Substitution) -> Result<MatrixS> {
        self.try_map(|e| e.substitute(assignment, mode))
    }

    pub fn to_laurent(&self) -> MatrixS {
        MatrixS {
            size: self.size,
            kind: RingKind::Laurent,
            entries: self.entries.iter().map(CoeffElem::to_laurent).collect(),
        }
    }
}

impl fmt::Display for MatrixS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" ; "))?;
        }
        Ok(())
    }
}

macro_rules! matrix_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MatrixS> for &MatrixS {
            type Output = MatrixS;
            fn $method(self, rhs: &MatrixS) -> MatrixS {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("matrix arithmetic: {e}"))
            }
        }
        impl $tr<MatrixS> for MatrixS {
            type Output = MatrixS;
            fn $method(self, rhs: MatrixS) -> MatrixS {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MatrixS> for MatrixS {
            type Output = MatrixS;
            fn $method(self, rhs: &MatrixS) -> MatrixS {
                (&self).$method(rhs)
            }
        }
        impl $tr<MatrixS> for &MatrixS {
            type Output = MatrixS;
            fn $method(self, rhs: MatrixS) -> MatrixS {
                self.$method(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, checked_add);
matrix_binop!(Sub, sub, checked_sub);
matrix_binop!(Mul, mul, checked_mul);

impl Neg for &MatrixS {
    type Output = MatrixS;
    fn neg(self) -> MatrixS {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for MatrixS {
    type Output = MatrixS;
    fn neg(self) -> MatrixS {
        -&self
    }
}
