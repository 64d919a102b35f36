//! The elliptic family at n = 1 over truncated Laurent series.

use commuting_ops::coeffring::{weierstrass_p, Scalar};
use commuting_ops::families::{build_theorem3, Theorem3Params};

fn main() -> commuting_ops::Result<()> {
    let g2 = Scalar::frac(7, 2);
    println!("p(x) = {}", weierstrass_p(&g2, 10));

    let n = 1;
    let trunc = Theorem3Params::default_trunc(n);
    let p = Theorem3Params::new(n, g2, Scalar::int(1), Scalar::int(-1), trunc)?;
    println!("alpha = {}, alpha^2 = {}", p.alpha, &p.alpha * &p.alpha);
    let c = build_theorem3(&p)?;
    let certified = c.commutator.min_trunc().unwrap_or(i64::MAX);
    println!("order(M) = {:?}, deepest pole x^{}", c.m.order(), c.deepest_pole());
    println!("[L, M] vanishes below x^{certified}: {}", c.commutator.is_zero());
    for (id, value) in &c.solution.assignment {
        println!("  {id} = {value}");
    }
    Ok(())
}
