use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeffring::{sqrt_in_field, QuadField, Scalar};

/// Dense univariate polynomial over `Q(sqrt d)`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Scalar, exp: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); exp];
        coeffs.push(c);
        UPoly::from_coeffs(coeffs)
    }

    /// Coefficients from degree 0 upward.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * z) + c)
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> UPoly {
        match self.leading().inv() {
            Ok(inv) => self.scale(&inv),
            Err(_) => UPoly::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, rhs: &UPoly) -> (UPoly, UPoly) {
        let dr = rhs.degree().expect("division by the zero polynomial");
        let inv = rhs.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dr)];
        while rem.len() > dr {
            let top = rem.len() - 1;
            let c = &rem[top] * &inv;
            if !c.is_zero() {
                for (i, r) in rhs.coeffs.iter().enumerate() {
                    let slot = &mut rem[top - dr + i];
                    *slot = &*slot - &(&c * r);
                }
            }
            quot[top - dr] = c;
            rem.pop();
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact square root over `field`, if one exists. The root's leading
    /// coefficient is the one chosen by [`sqrt_in_field`].
    pub fn sqrt(&self, field: Option<&QuadField>) -> Option<UPoly> {
        let Some(deg) = self.degree() else {
            return Some(UPoly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let lead = sqrt_in_field(&self.leading(), field)?;
        let two_lead_inv = (&lead * &Scalar::int(2)).inv().ok()?;
        let mut root = vec![Scalar::zero(); m + 1];
        root[m] = lead;
        for k in (0..m).rev() {
            // coefficient of z^{m+k} in self - root^2, where root[k] is still zero
            let partial = UPoly::from_coeffs(root.clone());
            let diff = self - &(&partial * &partial);
            root[k] = &diff.coeff(m + k) * &two_lead_inv;
        }
        let root = UPoly::from_coeffs(root);
        (&(&root * &root) == self).then_some(root)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_curve = super::Curve::unnormalized(
            self.coeffs.iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())),
        );
        write!(f, "{as_curve}")
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        self.scale(&Scalar::int(-1))
    }
}
