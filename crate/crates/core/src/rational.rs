//! Exact arbitrary-precision rationals.
//!
//! Every probability, weight and bound in this crate is a [`Rational`]. The
//! type is a thin newtype over [`num_rational::BigRational`], which already
//! keeps fractions in lowest terms with a positive denominator. The newtype
//! adds the textual form used in model files (`"p/q"` or a bare integer) and a
//! round-half-even decimal rendering for display.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl Rational {
    /// `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(Pow::pow(&self.0, exp))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounding
    /// half to even.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let numer = self.0.numer().abs() * &scale;
        let denom = self.0.denom();
        let (mut quot, rem) = numer.div_rem(denom);
        let twice = rem * 2u32;
        if twice > *denom || (twice == *denom && quot.is_odd()) {
            quot += 1u32;
        }
        let negative = self.0.is_negative() && !quot.is_zero();
        let mut body = quot.to_str_radix(10);
        if digits > 0 {
            if body.len() <= digits {
                body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
            }
            body.insert(body.len() - digits, '.');
        }
        if negative {
            body.insert(0, '-');
        }
        body
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(input: &str, part: &str) -> Result<BigInt, ParseRationalError> {
    let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError {
            input: input.to_owned(),
            reason: "expected an integer or p/q",
        });
    }
    BigInt::parse_bytes(part.as_bytes(), 10).ok_or(ParseRationalError {
        input: input.to_owned(),
        reason: "expected an integer or p/q",
    })
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_integer(s, s)?))),
            Some((p, q)) => {
                let numer = parse_integer(s, p)?;
                if q.starts_with(['-', '+']) {
                    return Err(ParseRationalError {
                        input: s.to_owned(),
                        reason: "denominator must be an unsigned integer",
                    });
                }
                let denom = parse_integer(s, q)?;
                if denom.sign() == Sign::NoSign {
                    return Err(ParseRationalError {
                        input: s.to_owned(),
                        reason: "zero denominator",
                    });
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as \"p/q\", an integer string, or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like BigRational. Use `checked_div` where the
// divisor is data-dependent.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(r("2/4"), Rational::new(1, 2));
        assert_eq!(r("-3/9"), Rational::new(-1, 3));
        assert_eq!(r("7"), Rational::from_integer(7));
        assert_eq!(r("0/5"), Rational::zero());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1/", "/2", "1/0", "a/b", "1.5", " 1/2", "1/-2", "1/2/3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert_eq!(Rational::new(0, 3).to_string(), "0");
        assert_eq!(Rational::new(1, -3).to_string(), "-1/3");
    }

    #[test]
    fn decimal_rounds_half_to_even() {
        assert_eq!(Rational::new(2, 3).to_decimal(3), "0.667");
        assert_eq!(Rational::new(1, 8).to_decimal(2), "0.12");
        assert_eq!(Rational::new(3, 8).to_decimal(2), "0.38");
        assert_eq!(Rational::new(5, 2).to_decimal(0), "2");
        assert_eq!(Rational::new(7, 2).to_decimal(0), "4");
        assert_eq!(Rational::new(1, 3).to_decimal(0), "0");
        assert_eq!(Rational::new(1, 1000).to_decimal(2), "0.00");
        assert_eq!(Rational::new(-1, 4).to_decimal(1), "-0.2");
        assert_eq!(Rational::new(1, 1).to_decimal(2), "1.00");
    }

    #[test]
    fn serde_accepts_strings_and_integers() {
        let xs: Vec<Rational> = serde_json::from_str(r#"["1/3", "2", 5]"#).unwrap();
        assert_eq!(xs, vec![Rational::new(1, 3), Rational::from_integer(2), Rational::from_integer(5)]);
        assert_eq!(serde_json::to_string(&Rational::new(2, 6)).unwrap(), "\"1/3\"");
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
    }

    #[test]
    fn large_powers_stay_exact() {
        let two_100 = Rational::from_integer(2).pow(100);
        let w = &two_100 / (&two_100 + Rational::one());
        assert_eq!(w.denom() - w.numer(), BigInt::one());
    }
}
