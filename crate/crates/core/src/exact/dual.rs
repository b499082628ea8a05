//! Dual numbers `a + b·ε` with `ε² = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualScalar {
    pub a: Scalar,
    pub b: Scalar,
}

impl DualScalar {
    pub fn new(a: Scalar, b: Scalar) -> DualScalar {
        assert_eq!(a.field(), b.field(), "field mismatch");
        DualScalar { a, b }
    }

    pub fn from_scalar(a: Scalar) -> DualScalar {
        let b = a.field().zero();
        DualScalar { a, b }
    }

    pub fn zero(field: Field) -> DualScalar {
        DualScalar { a: field.zero(), b: field.zero() }
    }

    pub fn one(field: Field) -> DualScalar {
        DualScalar { a: field.one(), b: field.zero() }
    }

    pub fn eps(field: Field) -> DualScalar {
        DualScalar { a: field.zero(), b: field.one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The ring map `ε ↦ 0`.
    pub fn reduce(&self) -> Scalar {
        self.a.clone()
    }

    /// Units are exactly the elements with invertible `a`.
    pub fn inv(&self) -> Option<DualScalar> {
        let ai = self.a.inv()?;
        let b = -(&(&self.b * &ai) * &ai);
        Some(DualScalar { a: ai, b })
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}e", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a DualScalar> for &'a DualScalar {
    type Output = DualScalar;
    fn add(self, o: &DualScalar) -> DualScalar {
        DualScalar { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a DualScalar> for &'a DualScalar {
    type Output = DualScalar;
    fn sub(self, o: &DualScalar) -> DualScalar {
        DualScalar { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a DualScalar> for &'a DualScalar {
    type Output = DualScalar;
    fn mul(self, o: &DualScalar) -> DualScalar {
        DualScalar { a: &self.a * &o.a, b: &(&self.a * &o.b) + &(&self.b * &o.a) }
    }
}

impl Neg for &DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar { a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_squares_to_zero() {
        let f = Field::Rationals;
        let e = DualScalar::eps(f);
        assert!((&e * &e).is_zero());
        let u = DualScalar::new(f.from_i64(3), f.from_i64(5));
        let ui = u.inv().unwrap();
        assert_eq!(&u * &ui, DualScalar::one(f));
        assert!(e.inv().is_none());
    }

    #[test]
    fn reduction_is_multiplicative() {
        let f = Field::Prime(7);
        let x = DualScalar::new(f.from_i64(2), f.from_i64(4));
        let y = DualScalar::new(f.from_i64(6), f.from_i64(1));
        assert_eq!((&x * &y).reduce(), &x.reduce() * &y.reduce());
        assert_eq!((&x + &y).reduce(), &x.reduce() + &y.reduce());
    }
}
