use super::diffop::DiffOperator;
use super::matrix::MatrixS;
use crate::coeffring::{CoeffElem, RingKind, Scalar};
use crate::error::{Error, Result};

/// The second-order operator
/// `diag(1,-1) d^2 + diag(r1,-r1) d + [[q1, q2], [q2, -q1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredL {
    pub r1: CoeffElem,
    pub q1: CoeffElem,
    pub q2: CoeffElem,
}

impl StructuredL {
    pub fn new(r1: CoeffElem, q1: CoeffElem, q2: CoeffElem) -> Result<Self> {
        if r1.kind() != q1.kind() || q1.kind() != q2.kind() {
            return Err(Error::MixedRing);
        }
        Ok(StructuredL { r1, q1, q2 })
    }

    pub fn kind(&self) -> RingKind {
        self.r1.kind()
    }

    pub fn e(&self) -> MatrixS {
        let k = self.kind();
        MatrixS::diag(vec![
            CoeffElem::constant(k, Scalar::one()),
            CoeffElem::constant(k, Scalar::int(-1)),
        ])
        .expect("uniform diagonal")
    }

    pub fn r(&self) -> MatrixS {
        MatrixS::diag(vec![self.r1.clone(), -&self.r1]).expect("uniform diagonal")
    }

    pub fn q(&self) -> MatrixS {
        MatrixS::two_by_two(self.q1.clone(), self.q2.clone(), self.q2.clone(), -&self.q1)
    }

    /// The full 2x2 operator.
    pub fn expand(&self) -> DiffOperator {
        let k = self.kind();
        DiffOperator::from_terms(2, k, vec![(2, self.e()), (1, self.r()), (0, self.q())])
            .expect("uniform 2x2 terms")
    }
}
