//! Builds the polynomial family for n = 1, 2 and prints the solved constants.

use commuting_ops::coeffring::Scalar;
use commuting_ops::families::{build_theorem2, Theorem2Params};

fn main() -> commuting_ops::Result<()> {
    for n in 1..=2 {
        let p = Theorem2Params::new(
            n,
            Scalar::frac(3, 2),
            Scalar::int(-2),
            Scalar::frac(5, 3),
            Scalar::int(1),
            Scalar::int(-1),
        );
        let c = build_theorem2(&p)?;
        println!("n = {n}: genus {}, order(M) = {:?}", c.genus(), c.m.order());
        for (id, value) in &c.solution.assignment {
            println!("  {id} = {value}");
        }
        println!("  [L, M] = 0: {}", c.commutator.is_zero());
        println!("  parity holds: {}", c.parity.holds());
    }
    Ok(())
}
