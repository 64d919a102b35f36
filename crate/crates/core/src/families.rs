//! The polynomial family (`r1 = a2 x^2 + a0`, `q1 = b x^2 + a2 x`,
//! `q2 = gamma x`), the elliptic family (`q2 = alpha p(x)`), and the two
//! worked `n = 1` examples written out entry by entry.

use crate::coeffring::{weierstrass_p, CoeffElem, QuadField, Rational, RingKind, Scalar};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, MatrixS, StructuredL};
use crate::recurrence::{
    assemble_m, init_state, parity_check, solve_constants, termination_residual, ConstantPolicy,
    ConstantSolution, ParityReport, RecurrenceState,
};

/// Parameters of the polynomial family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Params {
    pub n: u32,
    pub alpha0: Scalar,
    pub alpha2: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub mu1: Scalar,
    pub mu2: Scalar,
}

impl Theorem2Params {
    /// Uses the branch `gamma = i n alpha2`.
    pub fn new(n: u32, alpha0: Scalar, alpha2: Scalar, beta: Scalar, mu1: Scalar, mu2: Scalar) -> Self {
        let i = QuadField::gaussian().generator();
        let gamma = i * Scalar::int(n as i64) * &alpha2;
        Theorem2Params {
            n,
            alpha0,
            alpha2,
            beta,
            gamma,
            mu1,
            mu2,
        }
    }

    /// Replaces `gamma`, bypassing `gamma^2 = -n^2 alpha2^2`.
    pub fn with_gamma(mut self, gamma: Scalar) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn genus(&self) -> usize {
        2 * self.n as usize
    }

    pub fn l(&self) -> StructuredL {
        theorem2_l(&self.alpha0, &self.alpha2, &self.beta, &self.gamma)
    }
}

/// `L` of the polynomial family for an explicit `gamma`.
pub fn theorem2_l(alpha0: &Scalar, alpha2: &Scalar, beta: &Scalar, gamma: &Scalar) -> StructuredL {
    let r1 = CoeffElem::poly([(0, alpha0.clone()), (2, alpha2.clone())]);
    let q1 = CoeffElem::poly([(1, alpha2.clone()), (2, beta.clone())]);
    let q2 = CoeffElem::poly_monomial(gamma.clone(), 1);
    StructuredL::new(r1, q1, q2).expect("polynomial entries")
}

/// Parameters of the elliptic family. `alpha` is the generator of
/// `Q(sqrt(64 n^4 - 4 n^2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem3Params {
    pub n: u32,
    pub g2: Scalar,
    pub alpha: Scalar,
    pub mu1: Scalar,
    pub mu2: Scalar,
    /// Exponent below which the expansion of `p` is kept.
    pub trunc: u32,
}

impl Theorem3Params {
    pub fn new(n: u32, g2: Scalar, mu1: Scalar, mu2: Scalar, trunc: u32) -> Result<Self> {
        let n4 = (n as i64).pow(4);
        let n2 = (n as i64).pow(2);
        let field = QuadField::new(Rational::from_integer((64 * n4 - 4 * n2).into()))?;
        Ok(Theorem3Params {
            n,
            g2,
            alpha: field.generator(),
            mu1,
            mu2,
            trunc,
        })
    }

    /// `8n + 12`.
    pub fn default_trunc(n: u32) -> u32 {
        8 * n + 12
    }

    pub fn genus(&self) -> usize {
        2 * self.n as usize
    }

    pub fn l(&self) -> StructuredL {
        let p = CoeffElem::Laurent(weierstrass_p(&self.g2, self.trunc));
        StructuredL::new(
            CoeffElem::zero(RingKind::Laurent),
            CoeffElem::zero(RingKind::Laurent),
            p.scale(&self.alpha),
        )
        .expect("laurent entries")
    }
}

/// A finished construction with its certificates.
#[derive(Clone, Debug)]
pub struct Construction {
    pub l: StructuredL,
    pub m: DiffOperator,
    /// State after `g` steps, constants still symbolic.
    pub state: RecurrenceState,
    pub solution: ConstantSolution,
    pub parity: ParityReport,
    /// `[L, M]`; exactly zero for polynomial runs, zero through its
    /// truncation for Laurent runs.
    pub commutator: DiffOperator,
}

impl Construction {
    pub fn genus(&self) -> usize {
        self.state.current()
    }

    /// Smallest exponent stored anywhere in `M`.
    pub fn deepest_pole(&self) -> i64 {
        self.m
            .terms()
            .flat_map(|(_, m)| m.entries().filter_map(|(_, e)| e.terms().first().map(|t| t.0)).collect::<Vec<_>>())
            .min()
            .unwrap_or(0)
            .min(0)
    }
}

fn construct(l: StructuredL, mu1: Scalar, mu2: Scalar, g: usize) -> Result<Construction> {
    let state = init_state(l.clone(), mu1, mu2, ConstantPolicy::ProofSection).advance_to(g)?;
    let parity = parity_check(&state);
    let solution = solve_constants(&state, g)?;
    let solved = state_after(&state, &solution)?;
    let residual = termination_residual(&solved, g)?;
    if let Some((name, e)) = residual.entries().into_iter().find(|(_, e)| !e.is_zero()) {
        let (exp, c) = e.terms().into_iter().find(|(_, c)| !c.is_zero()).expect("nonzero entry");
        return Err(Error::InconsistentSystem(format!(
            "{name}^{} coefficient of x^{exp} = {c} does not vanish after solving",
            g + 1
        )));
    }
    let m = assemble_m(&state, g, &solution.assignment)?;
    let commutator = l.expand().op_commutator(&m)?;
    Ok(Construction {
        l,
        m,
        state,
        solution,
        parity,
        commutator,
    })
}

/// The state with `assignment` substituted into every step.
fn state_after(state: &RecurrenceState, solution: &ConstantSolution) -> Result<RecurrenceState> {
    let mut out = state.clone();
    for (k, step) in state.steps().iter().enumerate() {
        let s = crate::recurrence::Step {
            a: step.a.substitute(&solution.assignment, crate::coeffring::Substitution::Partial)?,
            b: step.b.substitute(&solution.assignment, crate::coeffring::Substitution::Partial)?,
        };
        out = out.with_step(k, s);
    }
    Ok(out)
}

/// Runs the construction with `g = 2n` and checks `[L, M] = 0` exactly.
pub fn build_theorem2(p: &Theorem2Params) -> Result<Construction> {
    let c = construct(p.l(), p.mu1.clone(), p.mu2.clone(), p.genus())?;
    if let Some(loc) = c.commutator.first_nonzero() {
        return Err(Error::InconsistentSystem(format!("[L, M] does not vanish: {loc}")));
    }
    Ok(c)
}

/// Orders of `[L, M]` that must be certified beyond the deepest pole of `M`.
pub const LAURENT_MARGIN: i64 = 12;

/// Runs the construction on truncated expansions at the pole `x = 0`.
pub fn build_theorem3(p: &Theorem3Params) -> Result<Construction> {
    let c = construct(p.l(), p.mu1.clone(), p.mu2.clone(), p.genus())?;
    if let Some(loc) = c.commutator.first_nonzero() {
        return Err(Error::InconsistentSystem(format!(
            "[L, M] does not vanish through its truncation: {loc}"
        )));
    }
    let certified = c.commutator.min_trunc().unwrap_or(i64::MAX);
    if certified - c.deepest_pole() < LAURENT_MARGIN {
        return Err(Error::TruncationTooShort(format!(
            "[L, M] is certified only below x^{certified}, fewer than {LAURENT_MARGIN} orders past the pole x^{}",
            c.deepest_pole()
        )));
    }
    Ok(c)
}

/// Finds `c1, c0` with `diff = c1 L + c0 Id`.
pub fn decompose_in_l(diff: &DiffOperator, l: &DiffOperator) -> Option<(Scalar, Scalar)> {
    if diff.order().is_some_and(|o| o > 2) {
        return None;
    }
    let lead = diff.coefficient(2);
    let c1 = lead.get(0, 0).coeff(0);
    if !c1.is_known() {
        return None;
    }
    let c1 = c1.constant_part().clone();
    let rest = diff.op_sub(&l.scale(&c1)).ok()?;
    if rest.order().is_some_and(|o| o > 0) {
        return None;
    }
    let b = rest.coefficient(0);
    let c0 = b.get(0, 0).coeff(0);
    if !c0.is_known() {
        return None;
    }
    let c0 = c0.constant_part().clone();
    let scalar = DiffOperator::scalar(diff.size(), diff.kind(), c0.clone());
    rest.op_sub(&scalar).ok()?.is_zero().then_some((c1, c0))
}

/// Which reading of a worked example to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transcription {
    /// Entry by entry as displayed. The undefined `beta_2` in the first
    /// example's `h1` is taken from [`ExampleParams::beta_sub2`].
    Printed,
    /// With the displayed misprints repaired.
    Corrected,
}

/// Parameters shared by both worked examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleParams {
    pub alpha0: Scalar,
    pub alpha2: Scalar,
    pub beta: Scalar,
    pub c0: Scalar,
    pub c1: Scalar,
    /// Value given to the displayed symbol `beta_2` (zero unless set).
    pub beta_sub2: Scalar,
}

impl ExampleParams {
    pub fn new(alpha0: Scalar, alpha2: Scalar, beta: Scalar) -> Self {
        ExampleParams {
            alpha0,
            alpha2,
            beta,
            c0: Scalar::zero(),
            c1: Scalar::zero(),
            beta_sub2: Scalar::zero(),
        }
    }

    pub fn with_constants(mut self, c1: Scalar, c0: Scalar) -> Self {
        self.c1 = c1;
        self.c0 = c0;
        self
    }

    /// `L` with `gamma = i alpha2`.
    pub fn l(&self) -> StructuredL {
        let i = QuadField::gaussian().generator();
        theorem2_l(&self.alpha0, &self.alpha2, &self.beta, &(i * &self.alpha2))
    }
}

fn px(terms: &[(u32, Scalar)]) -> CoeffElem {
    CoeffElem::poly(terms.iter().cloned())
}

fn m_from(p: &ExampleParams, rows: [[[CoeffElem; 2]; 2]; 5]) -> DiffOperator {
    let terms = rows
        .into_iter()
        .enumerate()
        .map(|(deg, [[a, b], [c, d]])| (deg as u32, MatrixS::two_by_two(a, b, c, d)))
        .collect();
    let core = DiffOperator::from_terms(2, RingKind::Polynomial, terms).expect("2x2 terms");
    let l = p.l().expand();
    let scalar = DiffOperator::scalar(2, RingKind::Polynomial, p.c0.clone());
    core.op_add(&l.scale(&p.c1))
        .and_then(|m| m.op_add(&scalar))
        .expect("uniform operators")
}

/// `M` of the first worked example (`mu = (1, -1)`).
pub fn example1_m(p: &ExampleParams, t: Transcription) -> DiffOperator {
    let i = QuadField::gaussian().generator();
    let (a0, a2, b) = (&p.alpha0, &p.alpha2, &p.beta);
    let s = |n: i64| Scalar::int(n);
    let h = |n: i64, d: i64| Scalar::frac(n, d);
    let zero = CoeffElem::zero(RingKind::Polynomial);
    let one = CoeffElem::one(RingKind::Polynomial);

    let r2 = px(&[(0, s(2) * a0), (2, s(2) * a2)]);
    let d2 = px(&[
        (0, a0 * a0),
        (1, s(6) * a2),
        (2, s(2) * (a0 * a2 + b)),
        (4, a2 * a2),
    ]);
    let off2 = px(&[(1, &i * a2)]);
    let m1 = px(&[
        (0, s(4) * a2),
        (1, s(4) * (a0 * a2 + b)),
        (2, s(2) * a0 * b),
        (3, s(4) * a2 * a2),
        (4, s(2) * a2 * b),
    ]);
    let m2 = px(&[(0, &i * a2), (1, &i * a0 * a2), (3, &i * a2 * a2)]);
    let h1_lead = match t {
        Transcription::Printed => &p.beta_sub2 * &p.beta_sub2,
        Transcription::Corrected => b * b,
    };
    let h1 = px(&[
        (0, s(4) * b),
        (1, s(2) * a0 * b),
        (2, h(3, 2) * a2 * a2),
        (3, s(4) * a2 * b),
        (4, h1_lead),
    ]);
    let h2 = px(&[(0, &i * a2 * a0 * h(1, 2)), (2, &i * a2 * a2 * h(3, 2)), (3, &i * a2 * b)]);
    let h4 = -&h1 + CoeffElem::constant(RingKind::Polynomial, s(2) * b - a0 * a2);
    m_from(
        p,
        [
            [[h1, h2.clone()], [h2, h4]],
            [[m1.clone(), m2.clone()], [m2, -&m1]],
            [[d2.clone(), off2.clone()], [off2, -&d2]],
            [[r2.clone(), zero.clone()], [zero.clone(), -&r2]],
            [[one.clone(), zero.clone()], [zero, -&one]],
        ],
    )
}

/// `M` of the second worked example (`mu = (1, 2)`).
///
/// Every displayed entry commutes as printed, so both transcriptions agree.
pub fn example2_m(p: &ExampleParams, _t: Transcription) -> DiffOperator {
    let i = QuadField::gaussian().generator();
    let (a0, a2, b) = (&p.alpha0, &p.alpha2, &p.beta);
    let s = |n: i64| Scalar::int(n);
    let h = |n: i64, d: i64| Scalar::frac(n, d);
    let zero = CoeffElem::zero(RingKind::Polynomial);

    let r = px(&[(0, a0.clone()), (2, a2.clone())]);
    let d2 = px(&[
        (0, a0 * a0),
        (1, s(6) * a2),
        (2, s(2) * (a0 * a2 + b)),
        (4, a2 * a2),
    ]);
    let off2 = px(&[(1, -&i * a2 * h(1, 2))]);
    let m1 = px(&[
        (0, s(4) * a2),
        (1, s(4) * (a0 * a2 + b)),
        (2, s(2) * a0 * b),
        (3, s(4) * a2 * a2),
        (4, s(2) * a2 * b),
    ]);
    let m2 = px(&[
        (0, -&i * a2 * h(7, 2)),
        (1, -&i * a0 * a2 * h(1, 2)),
        (3, -&i * a2 * a2 * h(1, 2)),
    ]);
    let m3 = px(&[
        (0, &i * a2 * h(5, 2)),
        (1, -&i * a0 * a2 * h(1, 2)),
        (3, -&i * a2 * a2 * h(1, 2)),
    ]);
    let m4 = m1.scale(&s(2));
    let h1 = px(&[
        (0, b.clone() + a2 * a0 * h(3, 2)),
        (1, s(2) * a0 * b),
        (2, a2 * a2 * h(3, 4)),
        (3, s(4) * a2 * b),
        (4, b * b),
    ]);
    let h2 = px(&[
        (0, -&i * a2 * a0 * h(7, 4)),
        (2, -&i * a2 * a2 * h(9, 4)),
        (3, -&i * a2 * b * h(1, 2)),
    ]);
    let h3 = px(&[
        (0, &i * a2 * a0 * h(5, 4)),
        (2, &i * a2 * a2 * h(3, 4)),
        (3, -&i * a2 * b * h(1, 2)),
    ]);
    let h4 = px(&[
        (0, s(4) * b + s(2) * a2 * a0),
        (1, s(4) * a0 * b),
        (2, a2 * a2 * h(9, 4)),
        (3, s(8) * a2 * b),
        (4, s(2) * b * b),
    ]);
    m_from(
        p,
        [
            [[h1, h3], [h2, h4]],
            [[m1, m3], [m2, m4]],
            [[d2.clone(), off2.clone()], [off2, d2.scale(&s(2))]],
            [[r.scale(&s(2)), zero.clone()], [zero.clone(), r.scale(&s(4))]],
            [
                [CoeffElem::one(RingKind::Polynomial), zero.clone()],
                [zero, CoeffElem::constant(RingKind::Polynomial, s(2))],
            ],
        ],
    )
}
