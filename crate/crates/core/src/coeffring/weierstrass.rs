//! Laurent expansion at the origin of the elliptic function with
//! `(p')^2 = 4 p^3 + g2 p`.
//!
//! Note the `+g2` sign and the missing `g3`: the standard normalization would
//! read `4p^3 - g2 p - g3`. We expand exactly the equation above.

use std::collections::BTreeMap;

use super::laurent::TruncatedLaurent;
use super::scalar::Scalar;

fn conv(a: &BTreeMap<i64, Scalar>, b: &BTreeMap<i64, Scalar>, exp: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, ca) in a {
        if let Some(cb) = b.get(&(exp - i)) {
            acc = acc + ca * cb;
        }
    }
    acc
}

fn product(a: &BTreeMap<i64, Scalar>, b: &BTreeMap<i64, Scalar>) -> BTreeMap<i64, Scalar> {
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (i, ca) in a {
        for (j, cb) in b {
            let slot = out.entry(i + j).or_insert_with(Scalar::zero);
            *slot = &*slot + &(ca * cb);
        }
    }
    out
}

/// `x^-2 + sum_{k>=1} c_k x^{2k}`, known below `x^trunc`.
///
/// `c_k` first appears at `x^{2k-4}` of `(p')^2 - 4p^3 - g2 p`, with factor
/// `-(8k + 12)`; each step solves that single linear equation.
pub fn weierstrass_p(g2: &Scalar, trunc: u32) -> TruncatedLaurent {
    let trunc = trunc as i64;
    let mut p: BTreeMap<i64, Scalar> = BTreeMap::new();
    p.insert(-2, Scalar::one());
    let mut k = 1i64;
    while 2 * k < trunc {
        let exp = 2 * k - 4;
        let dp: BTreeMap<i64, Scalar> = p
            .iter()
            .map(|(e, c)| (e - 1, c * &Scalar::int(*e)))
            .collect();
        let p2 = product(&p, &p);
        let residual = conv(&dp, &dp, exp)
            - Scalar::int(4) * conv(&p2, &p, exp)
            - g2 * &p.get(&exp).cloned().unwrap_or_else(Scalar::zero);
        let ck = residual / Scalar::int(8 * k + 12);
        if !ck.is_zero() {
            p.insert(2 * k, ck);
        }
        k += 1;
    }
    TruncatedLaurent::from_scalars(p, Some(trunc))
}
