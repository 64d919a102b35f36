mod common;

use commuting_ops::coeffring::{CoeffElem, QuadField, RingKind, Scalar};
use commuting_ops::families::*;
use commuting_ops::operator::{DiffOperator, MatrixS};
use commuting_ops::recurrence::{init_state, parity_check, ConstantPolicy};
use commuting_ops::Error;
use common::*;

fn draw_t2(seed: u64, n: u32) -> Theorem2Params {
    let mut g = rng(seed);
    let (mu1, mu2) = loop {
        let (a, b) = (nonzero_rational(&mut g), nonzero_rational(&mut g));
        if a != b {
            break (a, b);
        }
    };
    Theorem2Params::new(
        n,
        nonzero_rational(&mut g),
        nonzero_rational(&mut g),
        nonzero_rational(&mut g),
        mu1,
        mu2,
    )
}

fn i() -> Scalar {
    QuadField::gaussian().generator()
}

#[test]
fn theorem2_commutes_with_expected_order_and_leading_term() {
    for n in 1..=2 {
        for seed in 0..5 {
            let p = draw_t2(100 + seed, n);
            let c = build_theorem2(&p).unwrap();
            assert!(c.commutator.is_zero());
            assert_eq!(c.commutator.min_trunc(), None);
            assert_eq!(c.m.order(), Some(4 * n));
            let lead = MatrixS::diag(vec![
                CoeffElem::constant(RingKind::Polynomial, p.mu1.clone()),
                CoeffElem::constant(RingKind::Polynomial, p.mu2.clone()),
            ])
            .unwrap();
            assert_eq!(c.m.coefficient(4 * n), lead);
            assert!(c.parity.holds());
            assert!(c.solution.free.is_empty());
        }
    }
}

#[test]
fn theorem2_n1_constant_closed_form() {
    for seed in 0..5 {
        let p = draw_t2(200 + seed, 1);
        let c = build_theorem2(&p).unwrap();
        // C1^2 = -(mu1 - mu2)(alpha0 alpha2 - 2 beta) / 2
        let expect = -(&p.mu1 - &p.mu2) * (&p.alpha0 * &p.alpha2 - Scalar::int(2) * &p.beta)
            * Scalar::frac(1, 2);
        let (_, value) = c.solution.assignment.iter().next().unwrap();
        assert_eq!(value, &expect);
    }
}

#[test]
fn conjugate_gamma_branch_also_commutes() {
    for n in 1..=2 {
        let p = draw_t2(300 + n as u64, n);
        let conj = p.gamma.conjugate();
        let c = build_theorem2(&p.with_gamma(conj)).unwrap();
        assert!(c.commutator.is_zero());
    }
}

#[test]
fn vanishing_alpha2_decouples() {
    let mut p = draw_t2(400, 1);
    p = Theorem2Params::new(1, p.alpha0, Scalar::zero(), p.beta, p.mu1, p.mu2);
    assert!(p.gamma.is_zero());
    let c = build_theorem2(&p).unwrap();
    assert!(c.commutator.is_zero());
    let b1 = &c.state.steps()[1].b;
    assert!(b1.is_zero());
}

#[test]
fn first_b_matches_displayed_structure() {
    let p = draw_t2(500, 2);
    let c = build_theorem2(&p).unwrap();
    let b1 = &c.state.steps()[1].b;
    let half = (&p.mu1 - &p.mu2) * Scalar::frac(1, 2);
    let q2 = c.l.q2.clone();
    assert_eq!(b1.get(0, 1), &q2.scale(&-&half));
    assert_eq!(b1.get(1, 0), &q2.scale(&half));
    assert!(b1.get(0, 0).is_zero() && b1.get(1, 1).is_zero());
}

/// Top coefficient of `b2^(2m+1)` is `(2m-1)(alpha2^2 m^2 + gamma^2)/(2m)` times
/// that of `b2^(2m-1)`, for `gamma` unconstrained.
#[test]
fn leading_coefficient_recursion() {
    let mut g = rng(600);
    for trial in 0..3 {
        let (a0, a2, b) = (nonzero_rational(&mut g), nonzero_rational(&mut g), nonzero_rational(&mut g));
        let gamma = if trial == 0 { nonzero_rational(&mut g) } else { gaussian(&mut g) };
        let l = theorem2_l(&a0, &a2, &b, &gamma);
        let s = init_state(l, Scalar::int(3), Scalar::int(-2), ConstantPolicy::ProofSection)
            .advance_to(7)
            .unwrap();
        let top = |k: usize| {
            let e = s.steps()[k].b.get(1, 0);
            let c = e.coeff(k as i64);
            assert!(c.is_known());
            assert!(e.terms().iter().all(|(x, _)| *x <= k as i64));
            c.constant_part().clone()
        };
        assert_eq!(top(1), &gamma * &Scalar::frac(5, 2));
        for m in 1..=3i64 {
            let factor = Scalar::int(2 * m - 1) * (&a2 * &a2 * Scalar::int(m * m) + &gamma * &gamma)
                / Scalar::int(2 * m);
            assert_eq!(top(2 * m as usize + 1), factor * top(2 * m as usize - 1), "m = {m}");
        }
    }
}

#[test]
fn violated_gamma_constraint_is_inconsistent() {
    let p = Theorem2Params::new(1, Scalar::int(1), Scalar::int(2), Scalar::int(3), Scalar::int(1), Scalar::int(-1))
        .with_gamma(Scalar::int(1));
    match build_theorem2(&p) {
        Err(Error::InconsistentSystem(msg)) => assert!(msg.contains("b2^3 coefficient of x^3"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

fn example_params(seed: u64) -> ExampleParams {
    let mut g = rng(seed);
    ExampleParams::new(nonzero_rational(&mut g), nonzero_rational(&mut g), nonzero_rational(&mut g))
        .with_constants(small_rational(&mut g), small_rational(&mut g))
}

#[test]
fn worked_examples_commute() {
    for seed in 0..5 {
        let p = example_params(700 + seed);
        let l = p.l().expand();
        for m in [example1_m(&p, Transcription::Corrected), example2_m(&p, Transcription::Corrected)] {
            assert!(l.op_commutator(&m).unwrap().is_zero());
        }
    }
}

#[test]
fn printed_h1_fails_unless_beta_sub2_squared_is_beta_squared() {
    let p = example_params(800);
    let l = p.l().expand();
    let printed = example1_m(&p, Transcription::Printed);
    let loc = l.op_commutator(&printed).unwrap().first_nonzero().unwrap();
    // the x^4 term of h1 first shows up through its second derivative at d^0
    assert_eq!((loc.row, loc.col), (0, 0));
    assert_eq!((loc.degree, loc.exponent), (0, 2));
    let mut fixed = p.clone();
    fixed.beta_sub2 = -&p.beta;
    assert!(l.op_commutator(&example1_m(&fixed, Transcription::Printed)).unwrap().is_zero());
}

#[test]
fn construction_reproduces_example1_up_to_free_terms() {
    for seed in 0..5 {
        let p = example_params(900 + seed);
        let t2 = Theorem2Params::new(1, p.alpha0.clone(), p.alpha2.clone(), p.beta.clone(), Scalar::int(1), Scalar::int(-1));
        assert_eq!(t2.l(), p.l());
        let built = build_theorem2(&t2).unwrap();
        let diff = example1_m(&p, Transcription::Corrected).op_sub(&built.m).unwrap();
        assert_eq!(decompose_in_l(&diff, &p.l().expand()), Some((p.c1.clone(), p.c0.clone())));
    }
}

#[test]
fn construction_reproduces_example2_up_to_free_terms() {
    for seed in 0..3 {
        let p = example_params(950 + seed);
        let t2 = Theorem2Params::new(1, p.alpha0.clone(), p.alpha2.clone(), p.beta.clone(), Scalar::int(1), Scalar::int(2));
        let built = build_theorem2(&t2).unwrap();
        let diff = example2_m(&p, Transcription::Corrected).op_sub(&built.m).unwrap();
        assert_eq!(decompose_in_l(&diff, &p.l().expand()), Some((p.c1.clone(), p.c0.clone())));
    }
}

#[test]
fn example_fixture_entries() {
    let p = example_params(1000).with_constants(Scalar::zero(), Scalar::zero());
    let (a0, a2, b) = (&p.alpha0, &p.alpha2, &p.beta);
    let m1 = example1_m(&p, Transcription::Corrected);
    let m2_entry = CoeffElem::poly([(0, i() * a2), (1, i() * a0 * a2), (3, i() * a2 * a2)]);
    assert_eq!(m1.coefficient(1).get(0, 1), &m2_entry);
    let h2 = CoeffElem::poly([(0, i() * a2 * a0 * Scalar::frac(1, 2)), (2, i() * a2 * a2 * Scalar::frac(3, 2)), (3, i() * a2 * b)]);
    assert_eq!(m1.coefficient(0).get(1, 0), &h2);

    let m2 = example2_m(&p, Transcription::Corrected);
    let r = CoeffElem::poly([(0, a0.clone()), (2, a2.clone())]);
    assert_eq!(m2.coefficient(3), MatrixS::diag(vec![r.scale(&Scalar::int(2)), r.scale(&Scalar::int(4))]).unwrap());
    assert_eq!(example2_m(&p, Transcription::Printed), m2);
}

#[test]
fn example1_without_coupling_is_signed_square() {
    let p = ExampleParams::new(Scalar::frac(5, 3), Scalar::zero(), Scalar::zero());
    let m = example1_m(&p, Transcription::Corrected);
    let l = p.l().expand();
    let e = DiffOperator::from_matrix(l.coefficient(2), 0);
    assert_eq!(m, e.op_mul(&l.op_pow(2).unwrap()).unwrap());
}

#[test]
fn theorem3_intermediate_data() {
    let mu = (Scalar::frac(5, 2), Scalar::frac(-1, 3));
    let g2 = Scalar::frac(7, 3);
    let p = Theorem3Params::new(1, g2.clone(), mu.0.clone(), mu.1.clone(), 24).unwrap();
    let alpha = p.alpha.clone();
    assert_eq!(&alpha * &alpha, Scalar::int(60));
    let s = init_state(p.l(), mu.0.clone(), mu.1.clone(), ConstantPolicy::ProofSection).advance_to(3).unwrap();
    let d = &mu.0 - &mu.1;
    let coeff = |k: usize, i: usize, j: usize, exp: i64, a: bool| {
        let m = if a { &s.steps()[k].a } else { &s.steps()[k].b };
        m.get(i, j).coeff(exp)
    };
    // b2^1 = (mu1 - mu2) alpha / (2 x^2) + O(x^2)
    assert_eq!(coeff(1, 1, 0, -2, false).constant_part(), &(&d * &alpha * Scalar::frac(1, 2)));
    assert!(coeff(1, 1, 0, 0, false).is_zero());
    // a2^2 = a3^2 = (mu1 - mu2) alpha / x^3 + O(x)
    assert_eq!(coeff(2, 1, 0, -3, true).constant_part(), &(&d * &alpha));
    assert_eq!(coeff(2, 0, 1, -3, true), coeff(2, 1, 0, -3, true));
    // b2^2 pole, and a constant term of -(mu1 - mu2) g2 alpha / 40 under (p')^2 = 4p^3 + g2 p
    assert_eq!(coeff(2, 1, 0, -4, false).constant_part(), &(&d * &alpha * Scalar::frac(3, 2)));
    assert_eq!(coeff(2, 1, 0, 0, false).constant_part(), &-(&d * &g2 * &alpha * Scalar::frac(1, 40)));
    // b2^3 has no x^-6 term since alpha^2 = 60
    assert!(coeff(3, 1, 0, -6, false).is_zero());
    assert!(parity_check(&s).holds());
}

#[test]
fn theorem3_builds_for_n_up_to_2() {
    for n in 1..=2 {
        let p = Theorem3Params::new(n, Scalar::frac(-3, 2), Scalar::int(2), Scalar::frac(1, 2), Theorem3Params::default_trunc(n)).unwrap();
        let c = build_theorem3(&p).unwrap();
        assert_eq!(c.m.order(), Some(4 * n));
        assert!(c.parity.holds());
        assert_eq!(c.deepest_pole(), -4 * n as i64);
        let t = c.commutator.min_trunc().unwrap();
        assert!(t - c.deepest_pole() >= LAURENT_MARGIN);
    }
}

#[test]
fn theorem3_short_truncation_fails_loudly() {
    for trunc in [4, 8, 11] {
        let p = Theorem3Params::new(1, Scalar::int(1), Scalar::int(1), Scalar::int(-1), trunc).unwrap();
        assert!(matches!(build_theorem3(&p), Err(Error::TruncationTooShort(_))), "trunc {trunc}");
    }
}
