#![allow(dead_code)]

use commuting_ops::coeffring::{CoeffElem, QuadField, Rational, RingKind, Scalar};
use commuting_ops::operator::{DiffOperator, MatrixS, StructuredL};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational `p/q` with |p| <= 9, 1 <= q <= 5.
pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=5);
        if p != 0 {
            return Scalar::rational(Rational::new(BigInt::from(p), BigInt::from(q)));
        }
    }
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.gen_bool(0.2) {
        Scalar::zero()
    } else {
        nonzero_rational(rng)
    }
}

/// Element of Q(i) with small rational parts.
pub fn gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    let f = QuadField::gaussian();
    let a = small_rational(rng);
    let b = small_rational(rng);
    f.element(a.re().clone(), b.re().clone())
}

pub fn poly(rng: &mut ChaCha8Rng, max_deg: u32) -> CoeffElem {
    CoeffElem::poly((0..=max_deg).map(|e| (e, small_rational(rng))))
}

pub fn poly_matrix(rng: &mut ChaCha8Rng, size: usize, max_deg: u32) -> MatrixS {
    MatrixS::from_rows(
        (0..size)
            .map(|_| (0..size).map(|_| poly(rng, max_deg)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn operator(rng: &mut ChaCha8Rng, size: usize, order: u32, max_deg: u32) -> DiffOperator {
    DiffOperator::from_terms(
        size,
        RingKind::Polynomial,
        (0..=order).map(|d| (d, poly_matrix(rng, size, max_deg))).collect(),
    )
    .unwrap()
}

pub fn structured(rng: &mut ChaCha8Rng, max_deg: u32) -> StructuredL {
    StructuredL::new(poly(rng, max_deg), poly(rng, max_deg), poly(rng, max_deg)).unwrap()
}

/// Upper triangular E with nonzero constant diagonal and polynomial corner.
pub fn triangular_e(rng: &mut ChaCha8Rng) -> MatrixS {
    let k = RingKind::Polynomial;
    MatrixS::two_by_two(
        CoeffElem::constant(k, nonzero_rational(rng)),
        poly(rng, 2),
        CoeffElem::zero(k),
        CoeffElem::constant(k, nonzero_rational(rng)),
    )
}
