//! The two worked examples: commutation, and where the printed `h1` breaks.

use commuting_ops::coeffring::Scalar;
use commuting_ops::families::{example1_m, example2_m, ExampleParams, Transcription};

fn main() -> commuting_ops::Result<()> {
    let p = ExampleParams::new(Scalar::frac(3, 2), Scalar::int(-2), Scalar::frac(5, 3))
        .with_constants(Scalar::int(1), Scalar::frac(-1, 4));
    let l = p.l().expand();
    for (name, m) in [
        ("example 1", example1_m(&p, Transcription::Corrected)),
        ("example 2", example2_m(&p, Transcription::Corrected)),
    ] {
        println!("{name}: [L, M] = 0: {}", l.op_commutator(&m)?.is_zero());
    }

    // As printed, h1 carries beta_2^2 in place of beta^2.
    let mut printed = p.clone();
    printed.beta_sub2 = Scalar::int(4);
    let residual = l.op_commutator(&example1_m(&printed, Transcription::Printed))?;
    if let Some(loc) = residual.first_nonzero() {
        println!("printed example 1 with beta_2 = 4: first nonzero {loc}");
    }
    Ok(())
}
