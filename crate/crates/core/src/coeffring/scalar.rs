//! Rationals and elements of a quadratic extension `Q(t)`, `t^2 = d`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"` with the denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// The quadratic extension `Q(sqrt(d))` shared by one computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: Arc<Rational>,
}

impl QuadField {
    /// Rejects `d` that is a rational square, since then `Q[t]/(t^2 - d)` has zero divisors.
    pub fn new(d: Rational) -> Result<Self> {
        if rational_sqrt(&d).is_some() {
            return Err(Error::NotAField(format_rational(&d)));
        }
        Ok(QuadField { d: Arc::new(d) })
    }

    /// `Q(i)`.
    pub fn gaussian() -> Self {
        QuadField::new(rat(-1)).expect("-1 is not a square")
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// The generator `t`.
    pub fn generator(&self) -> Scalar {
        self.element(Rational::zero(), Rational::one())
    }

    pub fn element(&self, a: Rational, b: Rational) -> Scalar {
        let field = if b.is_zero() { None } else { Some(self.clone()) };
        Scalar { a, b, field }
    }
}

/// `a + b t` with `t^2 = d`. Purely rational scalars carry no field.
#[derive(Clone, Debug)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    field: Option<QuadField>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::rational(Rational::one())
    }

    pub fn rational(a: Rational) -> Self {
        Scalar {
            a,
            b: Rational::zero(),
            field: None,
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar::rational(rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::rational(ratio(n, d))
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `t`.
    pub fn im(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> Option<&QuadField> {
        self.field.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn join(&self, other: &Scalar) -> Result<Option<QuadField>> {
        match (&self.field, &other.field) {
            (Some(f), Some(g)) if f != g => Err(Error::MixedField),
            (Some(f), _) | (_, Some(f)) => Ok(Some(f.clone())),
            (None, None) => Ok(None),
        }
    }

    fn build(a: Rational, b: Rational, field: Option<QuadField>) -> Scalar {
        let field = if b.is_zero() { None } else { field };
        Scalar { a, b, field }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        match &self.field {
            None => &self.a * &self.a,
            Some(f) => &self.a * &self.a - f.d() * &self.b * &self.b,
        }
    }

    /// The automorphism `t -> -t`.
    pub fn conjugate(&self) -> Scalar {
        Scalar::build(self.a.clone(), -self.b.clone(), self.field.clone())
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        let f = self.join(rhs)?;
        Ok(Scalar::build(&self.a + &rhs.a, &self.b + &rhs.b, f))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        let f = self.join(rhs)?;
        Ok(Scalar::build(&self.a - &rhs.a, &self.b - &rhs.b, f))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        let f = self.join(rhs)?;
        let mut a = &self.a * &rhs.a;
        if let Some(field) = &f {
            if !self.b.is_zero() && !rhs.b.is_zero() {
                a += field.d() * &self.b * &rhs.b;
            }
        }
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Scalar::build(a, b, f))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let n = rhs.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.checked_mul(&rhs.conjugate())?;
        Ok(Scalar::build(&num.a / &n, &num.b / &n, num.field))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar::build(&self.a * r, &self.b * r, self.field.clone())
    }

    /// Exact square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Scalar::rational(r));
            }
            // a = d y^2
            return None;
        }
        let field = self.field.as_ref()?;
        // (x + y t)^2 = x^2 + d y^2 + 2 x y t
        let s = rational_sqrt(&self.norm())?;
        let two = rat(2);
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let root = field.element(x, y);
                if &root * &root == *self {
                    return Some(root);
                }
            }
        }
        None
    }

    pub fn pow(&self, k: u32) -> Scalar {
        (0..k).fold(Scalar::one(), |acc, _| &acc * self)
    }
}

/// Square root that may also use the field generator, e.g. `sqrt(d y^2) = y t`.
pub fn sqrt_in_field(s: &Scalar, field: Option<&QuadField>) -> Option<Scalar> {
    if let Some(r) = s.sqrt() {
        return Some(r);
    }
    let f = field.or(s.field())?;
    if s.is_rational() {
        let y = rational_sqrt(&(s.re() / f.d()))?;
        return Some(f.element(Rational::zero(), y));
    }
    None
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})t", self.b)
        } else {
            write!(f, "({} + ({})t)", self.a, self.b)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::rational(r)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar arithmetic: {e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-self.a.clone(), -self.b.clone(), self.field.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
