mod common;

use commuting_ops::coeffring::{CoeffElem, QuadField, RingKind, Scalar};
use commuting_ops::families::{example1_m, example2_m, ExampleParams, Transcription};
use commuting_ops::operator::{DiffOperator, MatrixS};
use commuting_ops::spectral::*;
use commuting_ops::Error;
use common::*;

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn generic(seed: u64) -> (Scalar, Scalar, Scalar) {
    let mut g = rng(seed);
    loop {
        let (a0, a2, b) = (nonzero_rational(&mut g), nonzero_rational(&mut g), nonzero_rational(&mut g));
        if &a2 * &a0 != b {
            return (a0, a2, b);
        }
    }
}

/// `z^4 - (a0 a2 - 2b) z^2 - a2 a0 b + b^2`.
fn example1_f(a0: &Scalar, a2: &Scalar, b: &Scalar) -> UPoly {
    UPoly::from_coeffs(vec![
        b * b - a2 * a0 * b,
        Scalar::zero(),
        -(a0 * a2 - s(2) * b),
        Scalar::zero(),
        Scalar::one(),
    ])
}

#[test]
fn example1_curve() {
    for seed in 0..3 {
        let (a0, a2, b) = generic(10 + seed);
        let c0 = (&a2 * &a0 - s(2) * &b) * Scalar::frac(1, 2);
        let p = ExampleParams::new(a0.clone(), a2.clone(), b.clone()).with_constants(Scalar::zero(), c0);
        let (l, m) = (p.l().expand(), example1_m(&p, Transcription::Corrected));
        let curve = find_quadratic_relation(&l, &m, 4).unwrap();
        let f = example1_f(&a0, &a2, &b);
        assert_eq!(curve.hyperelliptic_rhs(), Some(f));
        assert!(eval_relation(&curve, &l, &m).unwrap().is_zero());
    }
}

#[test]
fn example2_curve_in_integer_normalization() {
    let (a0, a2, b) = generic(20);
    let p = ExampleParams::new(a0.clone(), a2.clone(), b.clone());
    let (l, m) = (p.l().expand(), example2_m(&p, Transcription::Corrected));
    let curve = find_quadratic_relation(&l, &m, 4).unwrap();
    let k = &a2 * &a0 - s(2) * &b;
    let expect = Curve::unnormalized([
        ((0, 2), s(16)),
        ((0, 1), s(-8) * &k),
        ((2, 1), s(-48)),
        ((4, 0), s(32)),
        ((2, 0), s(16) * &k),
        ((0, 0), &a2 * &a2 * &a0 * &a0),
    ]);
    assert_eq!(curve.scale(&s(16)), expect);
    assert_eq!(expect.normalized(), curve);
}

#[test]
fn square_of_l_is_found_linearly() {
    let (a0, a2, b) = generic(30);
    let l = ExampleParams::new(a0, a2, b).l().expand();
    let m = l.op_pow(2).unwrap();
    let curve = find_quadratic_relation(&l, &m, 4).unwrap();
    assert_eq!(curve, Curve::new([((0, 1), s(1)), ((2, 0), s(-1))]));
    assert!(eval_relation(&curve, &l, &m).unwrap().is_zero());
}

#[test]
fn non_commuting_inputs_have_no_relation() {
    let (a0, a2, b) = generic(40);
    let l = ExampleParams::new(a0, a2, b).l().expand();
    let m = DiffOperator::from_matrix(MatrixS::scalar_elem(2, &CoeffElem::poly_monomial(s(1), 1)), 1);
    assert!(matches!(find_quadratic_relation(&l, &m, 4), Err(Error::NoRelationFound(_))));
}

#[test]
fn degenerate_powers_are_rank_deficient() {
    let k = RingKind::Polynomial;
    let c = |n: i64| CoeffElem::constant(k, s(n));
    let l = DiffOperator::from_matrix(MatrixS::diag(vec![c(0), c(1), c(1)]).unwrap(), 0);
    let m = DiffOperator::from_matrix(MatrixS::diag(vec![c(1), c(2), c(3)]).unwrap(), 0);
    assert_eq!(find_quadratic_relation(&l, &m, 2), Err(Error::RankDeficient));
}

fn alpha0_zero_pair(seed: u64, example: u8) -> (DiffOperator, DiffOperator, Scalar) {
    let (_, a2, b) = generic(seed);
    let p = ExampleParams::new(Scalar::zero(), a2, b.clone());
    let m = if example == 1 {
        example1_m(&p.clone().with_constants(Scalar::zero(), -&b), Transcription::Corrected)
    } else {
        example2_m(&p, Transcription::Corrected)
    };
    (p.l().expand(), m, b)
}

#[test]
fn reducible_factors_on_the_operators() {
    let (l, m, b) = alpha0_zero_pair(50, 1);
    let l2b = l.op_pow(2).unwrap().op_add(&DiffOperator::scalar(2, RingKind::Polynomial, b)).unwrap();
    let f1 = m.op_sub(&l2b).unwrap();
    let f2 = m.op_add(&l2b).unwrap();
    assert!(!f1.is_zero() && !f2.is_zero());
    assert!(f1.op_mul(&f2).unwrap().is_zero());
    assert!(f2.op_mul(&f1).unwrap().is_zero());
}

#[test]
fn factorizations_of_alpha0_zero_curves() {
    let (l, m, b) = alpha0_zero_pair(60, 1);
    let curve = find_quadratic_relation(&l, &m, 4).unwrap();
    let Some(Reducibility::Factors(f1, f2)) = reducibility_quadratic(&curve) else { panic!() };
    assert_eq!(f1, Curve::new([((0, 1), s(1)), ((2, 0), s(-1)), ((0, 0), -&b)]));
    assert_eq!(f2, Curve::new([((0, 1), s(1)), ((2, 0), s(1)), ((0, 0), b.clone())]));
    assert_eq!(f1.mul(&f2), curve);
    for f in [&f1, &f2] {
        assert!(!eval_relation(f, &l, &m).unwrap().is_zero());
    }
    assert!(eval_relation(&f1.mul(&f2), &l, &m).unwrap().is_zero());

    let (l, m, b) = alpha0_zero_pair(61, 2);
    let curve = find_quadratic_relation(&l, &m, 4).unwrap();
    let Some(Reducibility::Factors(f1, f2)) = reducibility_quadratic(&curve) else { panic!() };
    assert_eq!(f1, Curve::new([((0, 1), s(1)), ((2, 0), s(-2))]));
    assert_eq!(f2, Curve::new([((0, 1), s(1)), ((2, 0), s(-1)), ((0, 0), b)]));
    assert_eq!(f1.mul(&f2), curve);
}

#[test]
fn generic_example1_curve_is_irreducible() {
    for seed in 0..5 {
        let (a0, a2, b) = generic(70 + seed);
        let f = example1_f(&a0, &a2, &b);
        let curve = Curve::from_w_coeffs(&[-&f, UPoly::zero(), UPoly::constant(s(1))]);
        let field = QuadField::gaussian();
        assert_eq!(reducibility_quadratic_over(&curve, Some(&field)), Some(Reducibility::IrreducibleOverField));
        // the discriminant 4 f has a simple root: f is squarefree
        assert!(nonsingular_hyperelliptic(&f));
    }
}

/// Discriminant of `z^4 + a z^2 + c` is `16 c (a^2 - 4c)^2`.
fn biquadratic_disc(a: &Scalar, c: &Scalar) -> Scalar {
    let t = a * a - s(4) * c;
    s(16) * c * &t * &t
}

#[test]
fn squarefree_matches_discriminant() {
    let mut g = rng(80);
    for i in 0..40 {
        let a = small_rational(&mut g);
        let c = match i % 4 {
            0 => Scalar::zero(),
            1 => &a * &a * Scalar::frac(1, 4),
            _ => small_rational(&mut g),
        };
        let f = UPoly::from_coeffs(vec![c.clone(), Scalar::zero(), a.clone(), Scalar::zero(), s(1)]);
        assert_eq!(nonsingular_hyperelliptic(&f), !biquadratic_disc(&a, &c).is_zero(), "a={a} c={c}");
    }
}

#[test]
fn nonsingularity_boundary() {
    for seed in 0..5 {
        let (a0, a2, b) = generic(90 + seed);
        assert!(nonsingular_hyperelliptic(&example1_f(&a0, &a2, &b)));
        let z = Scalar::zero();
        assert!(!nonsingular_hyperelliptic(&example1_f(&z, &a2, &b)));
        assert!(!nonsingular_hyperelliptic(&example1_f(&a0, &z, &b)));
        assert!(!nonsingular_hyperelliptic(&example1_f(&a0, &a2, &z)));
        assert!(!nonsingular_hyperelliptic(&example1_f(&a0, &a2, &(&a2 * &a0))));
    }
    assert!(nonsingular_hyperelliptic(&UPoly::monomial(s(1), 1)));
}
