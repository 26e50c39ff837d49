//! Exact rational scalars and their `[numerator, denominator]` JSON encoding.
//!
//! Every scalar in the crate is a reduced fraction with positive denominator.
//! On the wire a rational is a 2-element array; each integer is emitted as a
//! JSON number when it fits in `i64` and as a decimal string otherwise, and
//! both forms are accepted on input.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number. Always stored reduced, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        Self::from_bigints(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::SchemaError("rational with zero denominator".into()));
        }
        if denom.is_negative() {
            return Err(Error::SchemaError(
                "rational denominator must be positive".into(),
            ));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub(crate) fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses "3", "-3", "3/4", "-3/4".
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(num_s)
            .map_err(|_| Error::SchemaError(format!("bad rational numerator `{num_s}`")))?;
        let denom = BigInt::from_str(den_s)
            .map_err(|_| Error::SchemaError(format!("bad rational denominator `{den_s}`")))?;
        Rational::from_bigints(numer, denom)
    }
}

/// Serializes a `BigInt` as a JSON number when it fits in i64, otherwise as a
/// decimal string.
pub(crate) fn serialize_bigint<S: Serializer>(
    n: &BigInt,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => ser.serialize_i64(v),
        None => ser.serialize_str(&n.to_string()),
    }
}

pub(crate) struct BigIntVisitor;

impl Visitor<'_> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigInt, E> {
        BigInt::from_str(v).map_err(|_| E::custom(format!("bad integer string `{v}`")))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(2))?;
        seq.serialize_element(&JsonInt(self.numer()))?;
        seq.serialize_element(&JsonInt(self.denom()))?;
        seq.end()
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, ser)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;

        impl<'de> Visitor<'de> for RatVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 2-element [numerator, denominator] array")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Rational, A::Error> {
                let numer: BigIntDe = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let denom: BigIntDe = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<serde::de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Rational::from_bigints(numer.0, denom.0).map_err(de::Error::custom)
            }
        }

        de.deserialize_seq(RatVisitor)
    }
}

struct BigIntDe(BigInt);

impl<'de> Deserialize<'de> for BigIntDe {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        de.deserialize_any(BigIntVisitor).map(BigIntDe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_and_sign() {
        let r = Rational::new(4, 6).unwrap();
        assert_eq!(r.to_string(), "2/3");
        assert!(Rational::new(1, 0).is_err());
        assert!(Rational::new(1, -2).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("7/2".parse::<Rational>().unwrap().to_string(), "7/2");
        assert_eq!("-3".parse::<Rational>().unwrap().to_string(), "-3");
        assert_eq!(" 6/4 ".parse::<Rational>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_shape() {
        let r = Rational::new(-3, 4).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "[-3,4]");
        let back: Rational = serde_json::from_str("[-3,4]").unwrap();
        assert_eq!(back, r);
        // unreduced input is normalized, negative denominators rejected
        let n: Rational = serde_json::from_str("[2,4]").unwrap();
        assert_eq!(n.to_string(), "1/2");
        assert!(serde_json::from_str::<Rational>("[1,-2]").is_err());
        assert!(serde_json::from_str::<Rational>("[1,0]").is_err());
    }

    #[test]
    fn json_big_values_round_trip_as_strings() {
        let big = BigInt::from(i64::MAX) * BigInt::from(10);
        let r = Rational::from_bigints(big.clone(), BigInt::from(1)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains('"'));
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    proptest! {
        #[test]
        fn serde_round_trip(n in -10_000i64..10_000, d in 1i64..1000) {
            let r = Rational::new(n, d).unwrap();
            let s = serde_json::to_string(&r).unwrap();
            let back: Rational = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn parse_display_round_trip(n in -10_000i64..10_000, d in 1i64..1000) {
            let r = Rational::new(n, d).unwrap();
            let back: Rational = r.to_string().parse().unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn field_identities(a in -100i64..100, b in -100i64..100, c in 1i64..40) {
            let x = Rational::new(a, c).unwrap();
            let y = Rational::new(b, c).unwrap();
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            prop_assert_eq!(&x * &Rational::one(), x.clone());
        }
    }
}
