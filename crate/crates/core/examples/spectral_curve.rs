//! Recovers the spectral curves of both worked examples.

use commuting_ops::coeffring::Scalar;
use commuting_ops::families::{example1_m, example2_m, ExampleParams, Transcription};
use commuting_ops::spectral::{eval_relation, find_quadratic_relation, nonsingular_hyperelliptic};

fn main() -> commuting_ops::Result<()> {
    let (a0, a2, b) = (Scalar::frac(3, 2), Scalar::int(-2), Scalar::frac(5, 3));
    let c0 = (&a2 * &a0 - Scalar::int(2) * &b) * Scalar::frac(1, 2);
    let p = ExampleParams::new(a0, a2, b);
    let l = p.l().expand();

    let m1 = example1_m(&p.clone().with_constants(Scalar::zero(), c0), Transcription::Corrected);
    let r1 = find_quadratic_relation(&l, &m1, 4)?;
    println!("example 1: {r1} = 0");
    println!("  R(L, M) = 0: {}", eval_relation(&r1, &l, &m1)?.is_zero());
    if let Some(f) = r1.hyperelliptic_rhs() {
        println!("  w^2 = f(z) with f nonsingular: {}", nonsingular_hyperelliptic(&f));
    }

    let m2 = example2_m(&p, Transcription::Corrected);
    let r2 = find_quadratic_relation(&l, &m2, 4)?;
    println!("example 2: {r2} = 0");
    println!("  scaled by 16: {} = 0", r2.scale(&Scalar::int(16)));
    Ok(())
}
