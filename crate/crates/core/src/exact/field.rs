//! Ground fields: the rationals and prime fields GF(p).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The active ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// GF(p) for a prime `p < 2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod { value: v.rem_euclid(p as i64) as u64, prime: p },
        }
    }

    /// `num / den`; `den` must be nonzero (and invertible mod p).
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::Parse(format!("{den} is not invertible in {self}")))?;
        Ok(self.from_i64(num) * inv)
    }

    /// Parses `a`, `-a`, or `a/b`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                let nn = self.from_bigint(&n);
                let dd = self.from_bigint(&d).inv().ok_or_else(bad)?;
                Ok(nn * dd)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Mod { value: r.to_u64().unwrap(), prime: p }
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the active field. Arithmetic between different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { value, prime } => Scalar::Mod { value: pow_mod(*value, prime - 2, *prime), prime: *prime },
        })
    }

    /// Whether the displayed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, prime: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod { value: (a + p - b) % p, prime: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q }) if p == q => {
                Scalar::Mod { value: a * b % p, prime: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, prime } => Scalar::Mod { value: (prime - value) % prime, prime: *prime },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn parse_fields_and_coefficients() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("GF(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("GF(6)".parse::<Field>().is_err());
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("-3/6").unwrap(), q.from_ratio(-1, 2).unwrap());
        let f = Field::Prime(5);
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert_eq!(f.parse_scalar("-1").unwrap(), f.from_i64(4));
    }
}
