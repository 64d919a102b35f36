//! Multiplication, commutators and the reduction of `[L, A d + B]` modulo `L`.

use commuting_ops::coeffring::{CoeffElem, RingKind, Scalar};
use commuting_ops::operator::{DiffOperator, MatrixS, StructuredL};
use commuting_ops::reduction::tilde_specialized;

fn x(c: i64, e: u32) -> CoeffElem {
    CoeffElem::poly_monomial(Scalar::int(c), e)
}

fn main() -> commuting_ops::Result<()> {
    let k = RingKind::Polynomial;
    let ls = StructuredL::new(x(1, 2), x(3, 1), x(2, 1))?;
    let l = ls.expand();
    println!("L = {l}");

    let d = DiffOperator::d(2, k);
    println!("[d, L] = {}", d.op_commutator(&l)?);

    let a = MatrixS::two_by_two(x(1, 1), x(1, 0), CoeffElem::zero(k), x(2, 2));
    let b = MatrixS::two_by_two(CoeffElem::zero(k), x(1, 3), x(-1, 1), CoeffElem::zero(k));
    let first = DiffOperator::from_terms(2, k, vec![(1, a.clone()), (0, b.clone())])?;
    let brute = l.op_commutator(&first)?;
    let reduced = tilde_specialized(&ls, &a, &b)?;
    println!("Kt:\n{}", reduced.kt);
    println!("Pt:\n{}", reduced.pt);
    println!("Kt d L + Pt L + Tt d + Ft equals [L, A d + B]: {}", reduced.expand(&l)? == brute);
    Ok(())
}
