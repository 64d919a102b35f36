use std::collections::BTreeMap;
use std::fmt;

use super::upoly::UPoly;
use num_traits::Zero;

use crate::coeffring::{QuadField, Rational, Scalar};

/// A plane curve `R(z, w) = sum c_{a,b} z^a w^b`, keyed by `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl Curve {
    /// Drops zeros and normalizes so the leading coefficient in
    /// lexicographic `(w-degree, z-degree)` order is one.
    pub fn new(coeffs: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Curve {
        Curve::unnormalized(coeffs).normalized()
    }

    /// Keeps the given scaling.
    pub fn unnormalized(coeffs: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Curve {
        let mut map: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for (k, c) in coeffs {
            let slot = map.entry(k).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Curve { coeffs: map }
    }

    /// `sum_j w^j f_j(z)`.
    pub fn from_w_coeffs(polys: &[UPoly]) -> Curve {
        Curve::new(polys.iter().enumerate().flat_map(|(b, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(a, c)| ((a as u32, b as u32), c.clone()))
                .collect::<Vec<_>>()
        }))
    }

    pub fn coeff(&self, zdeg: u32, wdeg: u32) -> Scalar {
        self.coeffs.get(&(zdeg, wdeg)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn w_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    pub fn z_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    /// Coefficient of `w^j` as a polynomial in `z`.
    pub fn w_coeff(&self, j: u32) -> UPoly {
        let deg = self.z_degree().unwrap_or(0) as usize;
        UPoly::from_coeffs((0..=deg).map(|a| self.coeff(a as u32, j)).collect())
    }

    /// Leading coefficient in lexicographic `(w-degree, z-degree)` order.
    pub fn leading(&self) -> Scalar {
        self.coeffs
            .iter()
            .max_by_key(|((a, b), _)| (*b, *a))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn normalized(&self) -> Curve {
        match self.leading().inv() {
            Ok(inv) => self.scale(&inv),
            Err(_) => self.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Curve {
        Curve::unnormalized(self.coeffs.iter().map(|(k, c)| (*k, c * s)))
    }

    pub fn mul(&self, rhs: &Curve) -> Curve {
        Curve::unnormalized(self.coeffs.iter().flat_map(|((a, b), c)| {
            rhs.coeffs
                .iter()
                .map(move |((a2, b2), c2)| ((a + a2, b + b2), c * c2))
        }))
    }

    /// First quadratic field met among the coefficients.
    pub fn field(&self) -> Option<QuadField> {
        self.coeffs.values().find_map(|c| c.field().cloned())
    }

    /// `f` when the curve reads `w^2 - f(z)`.
    pub fn hyperelliptic_rhs(&self) -> Option<UPoly> {
        let n = self.normalized();
        if n.w_degree() != Some(2) || !n.w_coeff(1).is_zero() || n.w_coeff(2) != UPoly::constant(Scalar::one()) {
            return None;
        }
        Some(-&n.w_coeff(0))
    }
}

impl fmt::Display for Curve {
    /// Monomials in descending `(w-degree, z-degree)` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|(a, b)| std::cmp::Reverse((*b, *a)));
        for (n, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(a, b)];
            let negative = c.is_rational() && c.re() < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let sign = match (n, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mut vars = String::new();
            for (var, e) in [("w", b), ("z", a)] {
                match e {
                    0 => {}
                    1 => vars.push_str(var),
                    _ => vars.push_str(&format!("{var}^{e}")),
                }
                if e > 0 && var == "w" && a > 0 {
                    vars.push('*');
                }
            }
            let body = match (mag.is_one(), vars.is_empty()) {
                (true, false) => vars,
                (_, true) => format!("{mag}"),
                (false, false) => format!("{mag}*{vars}"),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}
