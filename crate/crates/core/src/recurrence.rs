//! Step-by-step construction of `M = sum_j (A_j d + B_j) L^(g-j)` commuting
//! with a structured `L`.
//!
//! Step `k` holds `A_k = [[a1, a3], [a2, a4]]` and `B_k = [[b1, b3], [b2, b4]]`.
//! Advancing from `k` to `k + 1` forces `Kt_{k+1} = -Tt_k` and
//! `Pt_{k+1} = -Ft_k` (see [`crate::reduction::tilde_specialized`]), which
//! yields `A_{k+1}` and the off-diagonal of `B_{k+1}`; the diagonal `b1, b4` is
//! then fixed by requiring the diagonal of `Tt_{k+1}` to vanish. `M` commutes
//! with `L` once `A_{g+1}`, `b2^{g+1}` and `b3^{g+1}` all vanish.

use std::collections::BTreeSet;

use crate::coeffring::{
    AffineForm, Assignment, CoeffElem, Scalar, Substitution, UnknownId, UnknownKind,
};
use crate::error::{Error, Result};
use crate::linalg::{self, LinearOutcome};
use crate::operator::{DiffOperator, MatrixS, StructuredL};
use crate::reduction::tilde_specialized;

/// Which integration constants stay symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantPolicy {
    /// Every `C_1^k, C_2^k, C_3^k, C_4^k` is an unknown.
    AllSymbolic,
    /// `C_2^k = C_3^k = C_4^k = 0` and `C_1^{2k+1} = 0`; only `C_1^{2k}` remain.
    ProofSection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub a: MatrixS,
    pub b: MatrixS,
}

/// Immutable snapshot of the construction after some number of steps.
#[derive(Clone, Debug)]
pub struct RecurrenceState {
    l: StructuredL,
    steps: Vec<Step>,
    unknowns: Vec<UnknownId>,
    policy: ConstantPolicy,
}

/// `A_0 = 0`, `B_0 = diag(mu1, mu2)`.
pub fn init_state(
    l: StructuredL,
    mu1: Scalar,
    mu2: Scalar,
    policy: ConstantPolicy,
) -> RecurrenceState {
    let kind = l.kind();
    let b0 = MatrixS::diag(vec![CoeffElem::constant(kind, mu1), CoeffElem::constant(kind, mu2)])
        .expect("uniform diagonal");
    RecurrenceState {
        l,
        steps: vec![Step {
            a: MatrixS::zero(2, kind),
            b: b0,
        }],
        unknowns: Vec::new(),
        policy,
    }
}

/// `A_{k+1}` together with `b2^{k+1}` and `b3^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Advance {
    pub a: MatrixS,
    pub b2: CoeffElem,
    pub b3: CoeffElem,
}

impl Advance {
    /// Named entries in a fixed order: a1, a2, a3, a4, b2, b3.
    pub fn entries(&self) -> [(&'static str, &CoeffElem); 6] {
        [
            ("a1", self.a.get(0, 0)),
            ("a2", self.a.get(1, 0)),
            ("a3", self.a.get(0, 1)),
            ("a4", self.a.get(1, 1)),
            ("b2", &self.b2),
            ("b3", &self.b3),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|(_, e)| e.is_zero())
    }
}

/// Result of [`solve_constants`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantSolution {
    /// Values for every unknown of the state (free ones are zero).
    pub assignment: Assignment,
    /// Unknowns the residual does not determine.
    pub free: Vec<UnknownId>,
}

/// Outcome of [`parity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub checked: usize,
    /// First index at which the odd/even pattern fails.
    pub first_violation: Option<usize>,
}

impl ParityReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl RecurrenceState {
    pub fn l(&self) -> &StructuredL {
        &self.l
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn unknowns(&self) -> &[UnknownId] {
        &self.unknowns
    }

    pub fn policy(&self) -> ConstantPolicy {
        self.policy
    }

    /// Index of the last completed step.
    pub fn current(&self) -> usize {
        self.steps.len() - 1
    }

    /// Replaces a step; used to build negative controls.
    pub fn with_step(&self, k: usize, step: Step) -> RecurrenceState {
        let mut out = self.clone();
        out.steps[k] = step;
        out
    }

    fn constant(&mut self, kind: UnknownKind, level: u32) -> Option<UnknownId> {
        let symbolic = match self.policy {
            ConstantPolicy::AllSymbolic => true,
            ConstantPolicy::ProofSection => kind == UnknownKind::C1 && level.is_multiple_of(2),
        };
        symbolic.then(|| {
            let id = UnknownId::new(kind, level);
            if !self.unknowns.contains(&id) {
                self.unknowns.push(id);
            }
            id
        })
    }

    /// `A_{k+1}`, `b2^{k+1}`, `b3^{k+1}` from step `k`, with the `a1`, `a4`
    /// integration constants supplied by `c3`, `c4`.
    fn advance_from(
        &self,
        k: usize,
        c3: Option<UnknownId>,
        c4: Option<UnknownId>,
    ) -> Result<Advance> {
        let step = &self.steps[k];
        let red = tilde_specialized(&self.l, &step.a, &step.b)?;
        let half = Scalar::frac(1, 2);
        let a3 = red.tt.get(0, 1).scale(&half);
        let a2 = red.tt.get(1, 0).scale(&half);
        let a1 = red.ft.get(0, 0).scale(&-&half).antiderivative(c3)?;
        let a4 = red.ft.get(1, 1).scale(&-&half).antiderivative(c4)?;
        let b3 = red.ft.get(0, 1).scale(&half) - a3.derivative();
        let b2 = red.ft.get(1, 0).scale(&half) - a2.derivative();
        Ok(Advance {
            a: MatrixS::two_by_two(a1, a3, a2, a4),
            b2,
            b3,
        })
    }

    /// Advances by one index.
    pub fn step(&self) -> Result<RecurrenceState> {
        let mut next = self.clone();
        let k = self.current();
        let level = (k + 1) as u32;
        let c3 = next.constant(UnknownKind::C3, level);
        let c4 = next.constant(UnknownKind::C4, level);
        let adv = next.advance_from(k, c3, c4)?;

        let (q2, r1) = (&self.l.q2, &self.l.r1);
        let dr1 = r1.derivative();
        let (a1, a3, a2, a4) = (
            adv.a.get(0, 0),
            adv.a.get(0, 1),
            adv.a.get(1, 0),
            adv.a.get(1, 1),
        );
        let cross = a2 * q2 + a3 * q2;
        // diagonal of Tt_{k+1} vanishes
        let int1 = &cross - a1.derivative() * r1 - a1 * &dr1 + a1.derivative().derivative();
        let int4 = &cross + a4.derivative() * r1 + a4 * &dr1 - a4.derivative().derivative();
        let c1 = next.constant(UnknownKind::C1, level);
        let c2 = next.constant(UnknownKind::C2, level);
        let b1 = int1.scale(&Scalar::frac(-1, 2)).antiderivative(c1)?;
        let b4 = int4.scale(&Scalar::frac(1, 2)).antiderivative(c2)?;

        let b = MatrixS::two_by_two(b1, adv.b3.clone(), adv.b2.clone(), b4);
        next.steps.push(Step { a: adv.a, b });
        Ok(next)
    }

    /// Advances until step `k` exists.
    pub fn advance_to(&self, k: usize) -> Result<RecurrenceState> {
        let mut s = self.clone();
        while s.current() < k {
            s = s.step()?;
        }
        Ok(s)
    }
}

/// Checks the odd/even pattern at every index `1..=current`:
/// odd `k`: `A_k = 0`, `b2 = -b3`;
/// even `k`: `a1 = a4 = 0`, `a2 = a3 = -(b2^{k-1})'`, `b2 = b3 = (r1 a2 - a2')/2`.
pub fn parity_check(state: &RecurrenceState) -> ParityReport {
    let r1 = &state.l.r1;
    let mut checked = 0;
    for k in 1..state.steps.len() {
        let Step { a, b } = &state.steps[k];
        let (a1, a3, a2, a4) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
        let (b3, b2) = (b.get(0, 1), b.get(1, 0));
        let ok = if k % 2 == 1 {
            a.is_zero() && (b2 + b3).is_zero()
        } else {
            let prev_b2 = state.steps[k - 1].b.get(1, 0);
            let expect_a = -prev_b2.derivative();
            let expect_b = (r1 * a2 - a2.derivative()).scale(&Scalar::frac(1, 2));
            a1.is_zero()
                && a4.is_zero()
                && (a2 - &expect_a).is_zero()
                && (a3 - &expect_a).is_zero()
                && (b2 - &expect_b).is_zero()
                && (b3 - &expect_b).is_zero()
        };
        checked += 1;
        if !ok {
            return ParityReport {
                checked,
                first_violation: Some(k),
            };
        }
    }
    ParityReport {
        checked,
        first_violation: None,
    }
}

/// The would-be `A_{g+1}`, `b2^{g+1}`, `b3^{g+1}`; all zero iff `[L, M] = 0`.
pub fn termination_residual(state: &RecurrenceState, g: usize) -> Result<Advance> {
    if state.current() < g {
        return Err(Error::InconsistentSystem(format!(
            "state holds steps up to {} but the residual needs step {g}",
            state.current()
        )));
    }
    let mut scratch = state.clone();
    let level = (g + 1) as u32;
    let c3 = scratch.constant(UnknownKind::C3, level);
    let c4 = scratch.constant(UnknownKind::C4, level);
    scratch.advance_from(g, c3, c4)
}

/// One scalar equation `form = 0` with a human-readable origin.
struct Equation {
    label: String,
    form: AffineForm,
}

fn residual_equations(res: &Advance, g: usize) -> Result<Vec<Equation>> {
    let mut eqs = Vec::new();
    for (name, e) in res.entries() {
        match e {
            CoeffElem::Poly(p) => {
                for (exp, c) in p.iter() {
                    eqs.push(Equation {
                        label: format!("{name}^{} coefficient of x^{exp}", g + 1),
                        form: c.clone(),
                    });
                }
            }
            CoeffElem::Laurent(l) => {
                if !l.is_known_at(0) {
                    return Err(Error::TruncationTooShort(format!(
                        "{name}^{} is known only below x^{}; its principal part and constant term are needed",
                        g + 1,
                        l.trunc().unwrap_or_default()
                    )));
                }
                for (exp, c) in l.iter().filter(|(exp, _)| *exp <= 0) {
                    eqs.push(Equation {
                        label: format!("{name}^{} coefficient of x^{exp}", g + 1),
                        form: c.clone(),
                    });
                }
            }
        }
    }
    Ok(eqs)
}

/// Solves for the unknown constants that make the termination residual vanish.
///
/// For Laurent coefficients the principal part and constant term are
/// required to vanish; positive powers are left to the caller's commutator
/// check.
pub fn solve_constants(state: &RecurrenceState, g: usize) -> Result<ConstantSolution> {
    let res = termination_residual(state, g)?;
    let eqs = residual_equations(&res, g)?;
    let mut unknowns: BTreeSet<UnknownId> = state.unknowns.iter().copied().collect();
    for (_, e) in res.entries() {
        unknowns.extend(e.unknowns());
    }
    let cols: Vec<UnknownId> = unknowns.into_iter().collect();
    let rows = eqs
        .iter()
        .map(|eq| {
            let coeffs = cols.iter().map(|id| eq.form.coefficient_of(id)).collect();
            (coeffs, -eq.form.constant_part())
        })
        .collect();
    match linalg::solve(rows, cols.len()) {
        LinearOutcome::Inconsistent { row } => Err(Error::InconsistentSystem(format!(
            "{} = {} cannot vanish",
            eqs[row].label, eqs[row].form
        ))),
        LinearOutcome::Solved { values, free } => Ok(ConstantSolution {
            assignment: cols.iter().copied().zip(values).collect(),
            free: free.into_iter().map(|i| cols[i]).collect(),
        }),
    }
}

/// `M = sum_{j=0..g} (A_j d + B_j) L^(g-j)` after substituting `assignment`.
pub fn assemble_m(state: &RecurrenceState, g: usize, assignment: &Assignment) -> Result<DiffOperator> {
    if state.current() < g {
        return Err(Error::InconsistentSystem(format!(
            "state holds steps up to {} but M needs step {g}",
            state.current()
        )));
    }
    let kind = state.l.kind();
    let l = state.l.expand();
    let mut m = DiffOperator::zero(2, kind);
    // Horner in L from the right
    for (j, step) in state.steps[..=g].iter().enumerate() {
        if j > 0 {
            m = m.op_mul(&l)?;
        }
        let a = step.a.substitute(assignment, Substitution::Strict)?;
        let b = step.b.substitute(assignment, Substitution::Strict)?;
        let x = DiffOperator::from_terms(2, kind, vec![(1, a), (0, b)])?;
        m = m.op_add(&x)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::RingKind;

    fn x(c: i64, e: u32) -> CoeffElem {
        CoeffElem::poly_monomial(Scalar::int(c), e)
    }

    fn generic_l() -> StructuredL {
        StructuredL::new(x(2, 2) + x(1, 0), x(3, 2) + x(1, 1), x(5, 1) + x(1, 3)).unwrap()
    }

    #[test]
    fn init_seeds() {
        let s = init_state(generic_l(), Scalar::int(1), Scalar::int(2), ConstantPolicy::ProofSection);
        assert!(s.steps()[0].a.is_zero());
        assert_eq!(
            s.steps()[0].b,
            MatrixS::diag(vec![x(1, 0), x(2, 0)]).unwrap()
        );
    }

    #[test]
    fn first_two_steps() {
        let l = generic_l();
        let (mu1, mu2) = (Scalar::int(3), Scalar::int(-1));
        let half_diff = Scalar::frac(4, 2);
        let s = init_state(l.clone(), mu1, mu2, ConstantPolicy::ProofSection)
            .advance_to(2)
            .unwrap();
        let s1 = &s.steps()[1];
        assert!(s1.a.is_zero());
        assert_eq!(s1.b.get(1, 0), &l.q2.scale(&half_diff));
        assert_eq!(s1.b.get(0, 1), &-s1.b.get(1, 0));

        let s2 = &s.steps()[2];
        let a22 = l.q2.derivative().scale(&-&half_diff);
        assert_eq!(s2.a.get(1, 0), &a22);
        assert_eq!(s2.a.get(0, 1), &a22);
        let b = (&l.r1 * &a22 - a22.derivative()).scale(&Scalar::frac(1, 2));
        assert_eq!(s2.b.get(1, 0), &b);
        assert_eq!(s2.b.get(0, 1), &b);
        assert!(parity_check(&s).holds());
    }

    #[test]
    fn equal_mu_gives_scalar_m() {
        let s = init_state(generic_l(), Scalar::int(2), Scalar::int(2), ConstantPolicy::ProofSection);
        assert!(termination_residual(&s, 0).unwrap().is_zero());
        let m = assemble_m(&s, 0, &Assignment::new()).unwrap();
        assert_eq!(m, DiffOperator::scalar(2, RingKind::Polynomial, Scalar::int(2)));
    }

    #[test]
    fn corrupted_state_is_reported() {
        let s = init_state(generic_l(), Scalar::int(1), Scalar::int(-1), ConstantPolicy::ProofSection)
            .advance_to(3)
            .unwrap();
        assert!(parity_check(&s).holds());
        let mut bad = s.steps()[2].clone();
        bad.a.set(0, 0, x(1, 1));
        let report = parity_check(&s.with_step(2, bad));
        assert_eq!(report.first_violation, Some(2));
    }

    #[test]
    fn all_symbolic_registers_every_constant() {
        let s = init_state(generic_l(), Scalar::int(1), Scalar::int(-1), ConstantPolicy::AllSymbolic)
            .step()
            .unwrap();
        assert_eq!(s.unknowns().len(), 4);
        // a1^1 is the bare constant C3^1
        assert_eq!(
            s.steps()[1].a.get(0, 0),
            &CoeffElem::unknown(RingKind::Polynomial, UnknownId::new(UnknownKind::C3, 1))
        );
    }
}
