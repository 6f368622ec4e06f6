//! Arbitrary-precision rationals with a canonical `"p/q"` wire form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// An exact rational, always stored reduced with a positive denominator.
///
/// `Display` and `FromStr` define the wire form used by every file format:
/// `"p"` for integers, `"p/q"` otherwise, with the sign on the numerator and
/// no redundant characters. Parsing accepts a string only if it round-trips
/// to the identical bytes, so non-canonical spellings such as `"2/4"`,
/// `"3/1"`, `"+1"`, `"007"`, or `"1/-2"` are rejected rather than silently
/// normalized.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// `num/den` reduced to canonical form. Panics if `den == 0`; intended
    /// for literals in code, not for untrusted input (use `FromStr` there).
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rat(value)
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

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Best-effort `f64` image; only for export and drawing, never for predicates.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(value: i64) -> Self {
        Rat(BigRational::from(BigInt::from(value)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let reject = || Error::InvalidRational(s.to_string());
        let value = match s.split_once('/') {
            None => {
                let numer: BigInt = s.parse().map_err(|_| reject())?;
                BigRational::from(numer)
            }
            Some((num_s, den_s)) => {
                let numer: BigInt = num_s.parse().map_err(|_| reject())?;
                let denom: BigInt = den_s.parse().map_err(|_| reject())?;
                if denom.is_zero() {
                    return Err(reject());
                }
                BigRational::new(numer, denom)
            }
        };
        let rat = Rat(value);
        // Canonical form is exactly "whatever Display prints"; anything else
        // (leading zeros, plus signs, unreduced fractions, q = 1 spelled out)
        // fails this round-trip.
        if rat.to_string() != s {
            return Err(reject());
        }
        Ok(rat)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }

        impl $imp<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }

        impl $imp<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }

        impl $imp<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_parse_and_print() {
        for (text, num, den) in [
            ("0", 0, 1),
            ("7", 7, 1),
            ("-3", -3, 1),
            ("1/2", 1, 2),
            ("-5/7", -5, 7),
            ("22/7", 22, 7),
        ] {
            let parsed: Rat = text.parse().unwrap();
            assert_eq!(parsed, Rat::frac(num, den));
            assert_eq!(parsed.to_string(), text);
        }
    }

    #[test]
    fn non_canonical_forms_rejected() {
        for bad in [
            "", "+1", "-0", "01", "1/0", "0/0", "2/4", "3/1", "1/-2", "-2/-4", "1 /2", "1/ 2",
            "1.5", "a", "1/2/3", "--1", "1/01",
        ] {
            assert!(bad.parse::<Rat>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn frac_reduces() {
        assert_eq!(Rat::frac(2, 4), Rat::frac(1, 2));
        assert_eq!(Rat::frac(3, -6), Rat::frac(-1, 2));
        assert_eq!(Rat::frac(-2, -4).to_string(), "1/2");
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rat::frac(1, 3);
        let b = Rat::frac(1, 6);
        assert_eq!(&a + &b, Rat::frac(1, 2));
        assert_eq!(&a - &b, Rat::frac(1, 6));
        assert_eq!(&a * &b, Rat::frac(1, 18));
        assert_eq!(&a / &b, Rat::from(2));
        assert_eq!(-&a, Rat::frac(-1, 3));
    }

    #[test]
    fn serde_uses_the_string_form() {
        let r = Rat::frac(-5, 7);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-5/7\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<Rat>("\"2/4\"").is_err());
        assert!(serde_json::from_str::<Rat>("\"1/0\"").is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(num in -1_000_000i64..1_000_000, den in 1i64..100_000) {
            let r = Rat::frac(num, den);
            let text = r.to_string();
            let back: Rat = text.parse().unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn ordering_matches_cross_multiplication(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
            let x = Rat::frac(a, b);
            let y = Rat::frac(c, d);
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        }
    }
}
