//! The spectral curve of a commuting pair: recovery of a relation
//! `R(L, M) = 0` quadratic in `M`, its factorization, and squarefreeness.

mod curve;
mod upoly;

use std::collections::BTreeMap;

pub use curve::Curve;
pub use upoly::UPoly;

use crate::coeffring::{QuadField, RingKind, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, LinearOutcome};
use crate::operator::DiffOperator;

/// Coordinates `(d-degree, row, col, x-exponent)` of an operator.
type Coords = BTreeMap<(u32, usize, usize, i64), Scalar>;

fn coords(op: &DiffOperator) -> Result<Coords> {
    if op.kind() != RingKind::Polynomial {
        return Err(Error::NoRelationFound(
            "relation search needs polynomial coefficients".into(),
        ));
    }
    if let Some(id) = op.unknowns().first() {
        return Err(Error::UnboundUnknown(*id));
    }
    let mut out = Coords::new();
    for (deg, m) in op.terms() {
        for ((i, j), e) in m.entries() {
            for (exp, c) in e.terms() {
                if !c.is_zero() {
                    out.insert((deg, i, j, exp), c.constant_part().clone());
                }
            }
        }
    }
    Ok(out)
}

/// A monomial `z^a w^b` and its operator value `L^a M^b`.
struct Basis {
    key: (u32, u32),
    value: Coords,
}

/// Solves `target + sum c_k basis_k = 0`; `Ok(None)` when inconsistent.
fn solve_relation(target: &Coords, basis: &[&Basis]) -> Result<Option<(Vec<Scalar>, Vec<usize>)>> {
    let mut keys: Vec<_> = target.keys().copied().collect();
    for b in basis {
        keys.extend(b.value.keys().copied());
    }
    keys.sort();
    keys.dedup();
    let rows = keys
        .iter()
        .map(|k| {
            let row = basis
                .iter()
                .map(|b| b.value.get(k).cloned().unwrap_or_else(Scalar::zero))
                .collect();
            (row, -target.get(k).cloned().unwrap_or_else(Scalar::zero))
        })
        .collect();
    Ok(match linalg::solve(rows, basis.len()) {
        LinearOutcome::Inconsistent { .. } => None,
        LinearOutcome::Solved { values, free } => Some((values, free)),
    })
}

/// Finds the lowest-degree relation `M + sum c_j L^j = 0` or
/// `M^2 + sum p_j L^j M + sum q_j L^j = 0` with `j <= degz`
/// (`j <= ceil(degz / 2)` for the `p_j`).
///
/// A relation linear in `M` is tried first. Among quadratic relations the
/// smallest `z`-degree bound that admits one is used; if that relation is
/// not unique the search fails with [`Error::RankDeficient`].
pub fn find_quadratic_relation(l: &DiffOperator, m: &DiffOperator, degz: u32) -> Result<Curve> {
    let kind = l.kind();
    let mut l_pows = vec![DiffOperator::identity(l.size(), kind)];
    for _ in 0..degz {
        let next = l_pows.last().expect("nonempty").op_mul(l)?;
        l_pows.push(next);
    }
    let mut basis_l = Vec::new();
    for (a, p) in l_pows.iter().enumerate() {
        basis_l.push(Basis {
            key: (a as u32, 0),
            value: coords(p)?,
        });
    }
    let m_coords = coords(m)?;

    for bound in 0..=degz as usize {
        let basis: Vec<&Basis> = basis_l[..=bound].iter().collect();
        if let Some((values, free)) = solve_relation(&m_coords, &basis)? {
            if !free.is_empty() {
                return Err(Error::RankDeficient);
            }
            return Ok(relation_curve((0, 1), &basis, &values));
        }
    }

    let half = degz.div_ceil(2) as usize;
    let mut basis_lm = Vec::new();
    for (a, p) in l_pows[..=half].iter().enumerate() {
        basis_lm.push(Basis {
            key: (a as u32, 1),
            value: coords(&p.op_mul(m)?)?,
        });
    }
    let m2 = coords(&m.op_mul(m)?)?;
    for bound in 0..=degz as usize {
        let pb = bound.div_ceil(2).min(half);
        let basis: Vec<&Basis> = basis_lm[..=pb].iter().chain(basis_l[..=bound].iter()).collect();
        if let Some((values, free)) = solve_relation(&m2, &basis)? {
            if !free.is_empty() {
                return Err(Error::RankDeficient);
            }
            return Ok(relation_curve((0, 2), &basis, &values));
        }
    }
    Err(Error::NoRelationFound(format!(
        "no relation of w-degree at most 2 and z-degree at most {degz}"
    )))
}

fn relation_curve(top: (u32, u32), basis: &[&Basis], values: &[Scalar]) -> Curve {
    Curve::new(
        std::iter::once((top, Scalar::one()))
            .chain(basis.iter().zip(values).map(|(b, v)| (b.key, v.clone()))),
    )
}

/// `R(L, M)` with `z -> L`, `w -> M`.
pub fn eval_relation(r: &Curve, l: &DiffOperator, m: &DiffOperator) -> Result<DiffOperator> {
    let (size, kind) = (l.size(), l.kind());
    let mut l_pows = vec![DiffOperator::identity(size, kind)];
    let mut m_pows = vec![DiffOperator::identity(size, kind)];
    let mut out = DiffOperator::zero(size, kind);
    for ((a, b), c) in r.terms() {
        while l_pows.len() <= a as usize {
            let next = l_pows.last().expect("nonempty").op_mul(l)?;
            l_pows.push(next);
        }
        while m_pows.len() <= b as usize {
            let next = m_pows.last().expect("nonempty").op_mul(m)?;
            m_pows.push(next);
        }
        let term = l_pows[a as usize].op_mul(&m_pows[b as usize])?.scale(c);
        out = out.op_add(&term)?;
    }
    Ok(out)
}

/// Outcome of [`reducibility_quadratic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducibility {
    /// The discriminant has no square root over the coefficient field.
    IrreducibleOverField,
    /// Two factors `w + f(z)`, monic in `w`, whose product is the
    /// normalized curve.
    Factors(Curve, Curve),
}

/// Splits `w^2 + p(z) w + q(z)` when `p^2 - 4q` is a square over the field
/// of the coefficients. Returns `None` if the curve is not quadratic in `w`
/// with constant leading coefficient.
pub fn reducibility_quadratic(r: &Curve) -> Option<Reducibility> {
    reducibility_quadratic_over(r, r.field().as_ref())
}

/// As [`reducibility_quadratic`], taking square roots over `field`.
pub fn reducibility_quadratic_over(r: &Curve, field: Option<&QuadField>) -> Option<Reducibility> {
    if r.w_degree() != Some(2) {
        return None;
    }
    let lead = r.w_coeff(2);
    if lead.degree() != Some(0) {
        return None;
    }
    let inv = lead.leading().inv().ok()?;
    let p = r.w_coeff(1).scale(&inv);
    let q = r.w_coeff(0).scale(&inv);
    let disc = &(&p * &p) - &q.scale(&Scalar::int(4));
    let Some(s) = disc.sqrt(field.or(r.field().as_ref())) else {
        return Some(Reducibility::IrreducibleOverField);
    };
    let half = Scalar::frac(1, 2);
    let one = UPoly::constant(Scalar::one());
    let f1 = Curve::from_w_coeffs(&[(&p - &s).scale(&half), one.clone()]);
    let f2 = Curve::from_w_coeffs(&[(&p + &s).scale(&half), one]);
    Some(Reducibility::Factors(f1, f2))
}

/// True iff `gcd(f, f')` is constant.
pub fn nonsingular_hyperelliptic(f: &UPoly) -> bool {
    f.gcd(&f.derivative()).degree().is_some_and(|d| d == 0)
}
