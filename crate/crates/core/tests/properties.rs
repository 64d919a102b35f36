//! Randomized algebraic invariants.

mod common;

use commuting_ops::coeffring::{
    weierstrass_p, Assignment, CoeffElem, QuadField, Rational, RingKind, Scalar, Substitution,
    TruncatedLaurent, UnknownId, UnknownKind,
};
use commuting_ops::families::{build_theorem2, Theorem2Params};
use commuting_ops::io;
use commuting_ops::operator::{DiffOperator, MatrixS};
use commuting_ops::reduction::{commutator_first_order, reduce_mod_l};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), any::<bool>()).prop_map(|(a, b, irr)| {
        if irr {
            QuadField::gaussian().element(a, b)
        } else {
            Scalar::rational(a)
        }
    })
}

fn poly() -> impl Strategy<Value = CoeffElem> {
    prop::collection::vec((0u32..5, scalar()), 0..4).prop_map(CoeffElem::poly)
}

fn laurent_with(trunc: impl Strategy<Value = Option<i64>>) -> impl Strategy<Value = CoeffElem> {
    (prop::collection::vec((-4i64..6, scalar()), 0..4), trunc).prop_map(|(terms, trunc)| {
        let terms: Vec<_> = match trunc {
            Some(t) => terms.into_iter().filter(|(e, _)| *e < t).collect(),
            None => terms,
        };
        CoeffElem::Laurent(TruncatedLaurent::from_scalars(terms, trunc))
    })
}

fn laurent() -> impl Strategy<Value = CoeffElem> {
    laurent_with(prop_oneof![Just(None), (4i64..10).prop_map(Some)])
}

fn c(kind: UnknownKind, level: u32) -> UnknownId {
    UnknownId::new(kind, level)
}

/// Known part plus two unknowns with polynomial cofactors.
fn affine_poly() -> impl Strategy<Value = CoeffElem> {
    (poly(), poly(), poly()).prop_map(|(k, p1, p2)| {
        let kind = RingKind::Polynomial;
        k + CoeffElem::unknown(kind, c(UnknownKind::C1, 2)) * p1
            + CoeffElem::unknown(kind, c(UnknownKind::C3, 1)) * p2
    })
}

fn assignment() -> impl Strategy<Value = Assignment> {
    (scalar(), scalar()).prop_map(|(a, b)| {
        let mut m = Assignment::new();
        m.insert(c(UnknownKind::C1, 2), a);
        m.insert(c(UnknownKind::C3, 1), b);
        m
    })
}

fn op(order: u32, max_deg: u32) -> impl Strategy<Value = DiffOperator> {
    any::<u64>().prop_map(move |s| common::operator(&mut common::rng(s), 2, order, max_deg))
}

fn agree(a: &CoeffElem, b: &CoeffElem) -> bool {
    (a - b).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert!(agree(&(&a + &b), &(&b + &a)));
        prop_assert!(agree(&(&a * &b), &(&b * &a)));
        prop_assert!(agree(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
        prop_assert!(agree(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
    }

    #[test]
    fn exact_laurent_products_are_exact(a in laurent_with(Just(None)), b in laurent_with(Just(None))) {
        prop_assert_eq!((&a * &b).trunc(), None);
        prop_assert_eq!(&(&a * &b) * &a, &a * &(&b * &a));
    }

    #[test]
    fn derivative_inverts_antiderivative(p in poly(), l in laurent()) {
        prop_assert_eq!(p.antiderivative(None).unwrap().derivative(), p);
        let l = if l.coeff(-1).is_zero() { l } else {
            &l - &CoeffElem::Laurent(TruncatedLaurent::from_terms([(-1, l.coeff(-1))], None))
        };
        if let Ok(f) = l.antiderivative(None) {
            prop_assert!(agree(&f.derivative(), &l));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in affine_poly(), b in affine_poly(), k in poly(), asg in assignment()
    ) {
        let s = |e: &CoeffElem| e.substitute(&asg, Substitution::Strict).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a - &b)), &s(&a) - &s(&b));
        prop_assert_eq!(s(&(&a * &k)), &s(&a) * &k);
        prop_assert_eq!(s(&a.derivative()), s(&a).derivative());
        let partial = a.substitute(&Assignment::new(), Substitution::Partial).unwrap();
        prop_assert_eq!(partial, a);
    }

    #[test]
    fn norm_is_multiplicative(a in rational(), b in rational(), x in rational(), y in rational(),
                              d in prop::sample::select(vec![-1i64, 2, -3, 60, -12])) {
        let f = QuadField::new(Rational::from_integer(BigInt::from(d))).unwrap();
        let (u, v) = (f.element(a, b), f.element(x, y));
        prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weierstrass_residual_vanishes(g2 in rational(), trunc in 4u32..16) {
        let g2 = Scalar::rational(g2);
        let p = CoeffElem::Laurent(weierstrass_p(&g2, trunc));
        let dp = p.derivative();
        let residual = &dp * &dp - (&p * &p * &p).scale(&Scalar::int(4)) - p.scale(&g2);
        prop_assert!(residual.is_zero(), "{residual}");
        prop_assert_eq!(residual.trunc(), Some(trunc as i64 - 4));
    }

    #[test]
    fn operator_product_is_associative(p in op(2, 3), q in op(2, 3), r in op(2, 3)) {
        let lhs = p.op_mul(&q).unwrap().op_mul(&r).unwrap();
        let rhs = p.op_mul(&q.op_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(p in op(2, 2), q in op(1, 2), r in op(1, 2)) {
        let br = |a: &DiffOperator, b: &DiffOperator| a.op_commutator(b).unwrap();
        let sum = br(&p, &br(&q, &r))
            .op_add(&br(&q, &br(&r, &p))).unwrap()
            .op_add(&br(&r, &br(&p, &q))).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn commutator_with_centralizer_factor(l in op(2, 2), m in op(1, 2), c0 in rational(), c1 in rational()) {
        // N = L^2 + c1 L + c0 commutes with L.
        let (c0, c1) = (Scalar::rational(c0), Scalar::rational(c1));
        let n = l.op_pow(2).unwrap()
            .op_add(&l.scale(&c1)).unwrap()
            .op_add(&DiffOperator::scalar(2, RingKind::Polynomial, c0)).unwrap();
        prop_assert!(l.op_commutator(&n).unwrap().is_zero());
        let lhs = l.op_commutator(&m.op_mul(&n).unwrap()).unwrap();
        let rhs = l.op_commutator(&m).unwrap().op_mul(&n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_is_subadditive(p in op(2, 2), q in op(1, 2)) {
        let prod = p.op_mul(&q).unwrap();
        let (op_, oq) = (p.order().unwrap(), q.order().unwrap());
        let lead = p.coefficient(op_).checked_mul(&q.coefficient(oq)).unwrap();
        match prod.order() {
            Some(o) => {
                prop_assert!(o <= op_ + oq);
                prop_assert_eq!(o == op_ + oq, !lead.is_zero());
            }
            None => prop_assert!(lead.is_zero()),
        }
    }

    #[test]
    fn structured_reduction_shape(seed in any::<u64>()) {
        let mut g = common::rng(seed);
        let ls = common::structured(&mut g, 2);
        let a = common::poly_matrix(&mut g, 2, 3);
        let b = common::poly_matrix(&mut g, 2, 3);
        let kptf = commutator_first_order(&ls.e(), &ls.r(), &ls.q(), &a, &b).unwrap();
        let t = reduce_mod_l(&ls.e(), &ls.r(), &ls.q(), &kptf).unwrap();
        prop_assert!(t.kt.get(0, 0).is_zero() && t.kt.get(1, 1).is_zero());
        let two = Scalar::int(2);
        prop_assert_eq!(t.pt.get(0, 0), &a.get(0, 0).derivative().scale(&two));
        prop_assert_eq!(t.pt.get(1, 1), &a.get(1, 1).derivative().scale(&two));
    }

    #[test]
    fn document_round_trip(seed in any::<u64>(), laurent in any::<bool>(), trunc in 3i64..9) {
        let mut g = common::rng(seed);
        let base = common::operator(&mut g, 2, 2, 3);
        let field = QuadField::gaussian();
        let i = field.generator();
        let op = if laurent {
            let shift = CoeffElem::Laurent(TruncatedLaurent::from_scalars([(-2, i.clone())], Some(trunc)));
            base.map_entries(|e| e.to_laurent() * &shift)
        } else {
            base.scale(&i)
        };
        let text = io::render(&op, Some(&field)).unwrap();
        let (back, session) = io::parse(&text).unwrap();
        prop_assert_eq!(&back, &op);
        prop_assert_eq!(session.as_ref(), Some(&field));
        prop_assert_eq!(io::render(&back, Some(&field)).unwrap(), text);
    }

    #[test]
    fn theorem2_builds_stay_linear(seed in any::<u64>()) {
        // NonlinearInUnknowns would surface as a build error.
        let mut g = common::rng(seed);
        let p = Theorem2Params::new(
            1,
            common::small_rational(&mut g),
            common::nonzero_rational(&mut g),
            common::small_rational(&mut g),
            Scalar::one(),
            Scalar::int(-1),
        );
        let built = build_theorem2(&p).unwrap();
        prop_assert!(built.commutator.is_zero());
        prop_assert!(built.parity.holds());
        prop_assert_eq!(built.m.coefficient(4), MatrixS::diag(vec![
            CoeffElem::one(RingKind::Polynomial),
            CoeffElem::constant(RingKind::Polynomial, Scalar::int(-1)),
        ]).unwrap());
    }
}
