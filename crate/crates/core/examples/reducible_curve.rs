//! With alpha0 = 0 the spectral curve splits into two components.

use commuting_ops::coeffring::{RingKind, Scalar};
use commuting_ops::families::{example1_m, ExampleParams, Transcription};
use commuting_ops::operator::DiffOperator;
use commuting_ops::spectral::{find_quadratic_relation, reducibility_quadratic, Reducibility};

fn main() -> commuting_ops::Result<()> {
    let b = Scalar::frac(5, 3);
    let p = ExampleParams::new(Scalar::zero(), Scalar::int(-2), b.clone())
        .with_constants(Scalar::zero(), -&b);
    let (l, m) = (p.l().expand(), example1_m(&p, Transcription::Corrected));

    let curve = find_quadratic_relation(&l, &m, 4)?;
    println!("curve: {curve} = 0");
    if let Some(Reducibility::Factors(f1, f2)) = reducibility_quadratic(&curve) {
        println!("factors: ({f1}) * ({f2})");
    }

    let shift = l.op_pow(2)?.op_add(&DiffOperator::scalar(2, RingKind::Polynomial, b))?;
    let (minus, plus) = (m.op_sub(&shift)?, m.op_add(&shift)?);
    println!("M - L^2 - b is zero: {}", minus.is_zero());
    println!("M + L^2 + b is zero: {}", plus.is_zero());
    println!("their product is zero: {}", minus.op_mul(&plus)?.is_zero());
    Ok(())
}
