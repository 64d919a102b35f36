//! The commutator `[L, A d + B] = K d^3 + P d^2 + T d + F` of a second-order
//! `L = E d^2 + R d + Q` with a first-order operator, and its reduction modulo
//! `L` to `Kt d L + Pt L + Tt d + Ft`.

use crate::coeffring::{CoeffElem, Scalar};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, MatrixS, StructuredL};

/// Coefficients of `[L, A d + B]` by powers of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kptf {
    pub k: MatrixS,
    pub p: MatrixS,
    pub t: MatrixS,
    pub f: MatrixS,
}

/// The reduced form `Kt d L + Pt L + Tt d + Ft`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KptfTilde {
    pub kt: MatrixS,
    pub pt: MatrixS,
    pub tt: MatrixS,
    pub ft: MatrixS,
}

fn check_sizes(ms: &[&MatrixS]) -> Result<()> {
    let first = ms[0];
    for m in &ms[1..] {
        if m.size() != first.size() {
            return Err(Error::SizeMismatch(first.size(), m.size()));
        }
        if m.kind() != first.kind() {
            return Err(Error::MixedRing);
        }
    }
    Ok(())
}

/// Closed-form `K, P, T, F` for `[E d^2 + R d + Q, A d + B]`.
///
/// `T` uses `R A'` (the product of `R` with the derivative of `A`).
pub fn commutator_first_order(
    e: &MatrixS,
    r: &MatrixS,
    q: &MatrixS,
    a: &MatrixS,
    b: &MatrixS,
) -> Result<Kptf> {
    check_sizes(&[e, r, q, a, b])?;
    let (da, dda) = (a.derivative(), a.derivative().derivative());
    let (db, ddb) = (b.derivative(), b.derivative().derivative());
    let two = Scalar::int(2);

    let k = e * a - a * e;
    let p = (e * &da).scale(&two) + e * b + r * a - a * e.derivative() - a * r - b * e;
    let t = e * &dda + (e * &db).scale(&two) + r * &da + r * b + q * a
        - a * r.derivative()
        - a * q
        - b * r;
    let f = e * &ddb + r * &db + q * b - a * q.derivative() - b * q;
    Ok(Kptf { k, p, t, f })
}

impl Kptf {
    /// `K d^3 + P d^2 + T d + F`.
    pub fn expand(&self) -> Result<DiffOperator> {
        let s = self.k.size();
        DiffOperator::from_terms(
            s,
            self.k.kind(),
            vec![
                (3, self.k.clone()),
                (2, self.p.clone()),
                (1, self.t.clone()),
                (0, self.f.clone()),
            ],
        )
    }
}

impl KptfTilde {
    /// `Kt d L + Pt L + Tt d + Ft`, expanded with operator algebra.
    pub fn expand(&self, l: &DiffOperator) -> Result<DiffOperator> {
        let s = self.kt.size();
        let kind = self.kt.kind();
        let d_l = DiffOperator::d(s, kind).op_mul(l)?;
        d_l.left_mul_matrix(&self.kt)?
            .op_add(&l.left_mul_matrix(&self.pt)?)?
            .op_add(&DiffOperator::from_matrix(self.tt.clone(), 1))?
            .op_add(&DiffOperator::from_matrix(self.ft.clone(), 0))
    }
}

fn constant_value(e: &CoeffElem) -> Option<Scalar> {
    match e.terms().as_slice() {
        [] => Some(Scalar::zero()),
        [(0, c)] if c.is_known() => Some(c.constant_part().clone()),
        _ => None,
    }
}

/// Inverse of a 2x2 upper-triangular `E` with nonzero constant diagonal.
pub fn invert_e(e: &MatrixS) -> Result<MatrixS> {
    if e.size() != 2 || !e.get(1, 0).is_zero() {
        return Err(Error::NonInvertibleE);
    }
    let kind = e.kind();
    let l1 = constant_value(e.get(0, 0)).ok_or(Error::NonInvertibleE)?;
    let l2 = constant_value(e.get(1, 1)).ok_or(Error::NonInvertibleE)?;
    let (i1, i2) = (
        l1.inv().map_err(|_| Error::NonInvertibleE)?,
        l2.inv().map_err(|_| Error::NonInvertibleE)?,
    );
    let off = e.get(0, 1).scale(&-(&i1 * &i2));
    Ok(MatrixS::two_by_two(
        CoeffElem::constant(kind, i1),
        off,
        CoeffElem::zero(kind),
        CoeffElem::constant(kind, i2),
    ))
}

/// Reduction modulo `L`:
/// `Kt = K E^-1`, `Pt = (P - Kt (E' + R)) E^-1`,
/// `Tt = T - Kt (R' + Q) - Pt R`, `Ft = F - Kt Q' - Pt Q`.
pub fn reduce_mod_l(e: &MatrixS, r: &MatrixS, q: &MatrixS, kptf: &Kptf) -> Result<KptfTilde> {
    check_sizes(&[e, r, q, &kptf.k, &kptf.p, &kptf.t, &kptf.f])?;
    let einv = invert_e(e)?;
    let kt = &kptf.k * &einv;
    let pt = (&kptf.p - &kt * (e.derivative() + r)) * &einv;
    let tt = &kptf.t - &kt * (r.derivative() + q) - &pt * r;
    let ft = &kptf.f - &kt * q.derivative() - &pt * q;
    Ok(KptfTilde { kt, pt, tt, ft })
}

/// Entry formulas of the reduced commutator for the structured `L`
/// (`E = diag(1,-1)`, `R = diag(r1,-r1)`, `Q = [[q1,q2],[q2,-q1]]`).
///
/// `A = [[a1, a3], [a2, a4]]`, `B = [[b1, b3], [b2, b4]]`.
pub fn tilde_specialized(l: &StructuredL, a: &MatrixS, b: &MatrixS) -> Result<KptfTilde> {
    if a.size() != 2 || b.size() != 2 {
        return Err(Error::SizeMismatch(2, a.size().max(b.size())));
    }
    if a.kind() != l.kind() || b.kind() != l.kind() {
        return Err(Error::MixedRing);
    }
    let (r1, q1, q2) = (&l.r1, &l.q1, &l.q2);
    let (dr1, dq1, dq2) = (r1.derivative(), q1.derivative(), q2.derivative());
    let (a1, a3, a2, a4) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let (b1, b3, b2, b4) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    let d = |f: &CoeffElem| f.derivative();
    let dd = |f: &CoeffElem| f.derivative().derivative();
    let two = |f: CoeffElem| f.scale(&Scalar::int(2));

    let kt = MatrixS::two_by_two(
        CoeffElem::zero(l.kind()),
        two(-a3),
        two(-a2),
        CoeffElem::zero(l.kind()),
    );
    let pt = MatrixS::two_by_two(
        two(d(a1)),
        two(-b3 - d(a3)),
        two(-b2 - d(a2)),
        two(d(a4)),
    );

    let t11 = a2 * q2 + a3 * q2 - r1 * d(a1) + two(d(b1)) - a1 * &dr1 + dd(a1);
    let t12 = -(a1 * q2) + a4 * q2 - r1 * d(a3) + two(d(b3)) - a3 * &dr1 + dd(a3);
    let t21 = a1 * q2 - a4 * q2 + r1 * d(a2) - two(d(b2)) + a2 * &dr1 - dd(a2);
    let t22 = a2 * q2 + a3 * q2 + r1 * d(a4) - two(d(b4)) + a4 * &dr1 - dd(a4);

    let f11 = b2 * q2 + b3 * q2 - two(q1 * d(a1)) + two(q2 * d(a3)) + r1 * d(b1) - &dq1 * a1
        + &dq2 * a3
        + dd(b1);
    let f12 = -(b1 * q2) + b4 * q2 - two(q2 * d(a1)) - two(q1 * d(a3)) + r1 * d(b3) - &dq1 * a3
        - &dq2 * a1
        + dd(b3);
    let f21 = b1 * q2 - b4 * q2 + two(q1 * d(a2)) - two(q2 * d(a4)) - r1 * d(b2) + &dq1 * a2
        - &dq2 * a4
        - dd(b2);
    let f22 = b2 * q2 + b3 * q2 + two(q2 * d(a2)) + two(q1 * d(a4)) - r1 * d(b4)
        + &dq1 * a4
        + &dq2 * a2
        - dd(b4);

    Ok(KptfTilde {
        kt,
        pt,
        tt: MatrixS::two_by_two(t11, t12, t21, t22),
        ft: MatrixS::two_by_two(f11, f12, f21, f22),
    })
}
