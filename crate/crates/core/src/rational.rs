//! Exact rationals in canonical form.
//!
//! Arithmetic is checked: an overflow of the underlying `i128` panics
//! instead of wrapping, so a result is either exact or absent.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const HALF: Rational = Rational(Ratio::new_raw(1, 2));

    /// Builds `numer/denom` reduced to lowest terms with a positive denominator.
    pub fn new(numer: i128, denom: i128) -> Result<Rational> {
        if denom == 0 {
            return Err(Error::ParseRational(format!("{numer}/0")));
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(n: i128) -> Rational {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn abs(self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().expect("i128 ratio converts to f64")
    }

    /// Nearest multiple of `1/denom` to `x`, ties away from zero.
    pub fn nearest(x: f64, denom: u64) -> Result<Rational> {
        if !x.is_finite() {
            return Err(Error::ParseRational(x.to_string()));
        }
        if denom == 0 {
            return Err(Error::BadDenominator(denom));
        }
        let k = (x * denom as f64).round() as i128;
        Rational::new(k, denom as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Rational::new(p, q)
            }
            None => t.parse().map(Rational::from_integer).map_err(|_| bad()),
        }
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Rational> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n as i128)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $name:literal) => {
        impl $trait for Rational {
            type Output = Rational;

            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.0
                        .$checked(&rhs.0)
                        .unwrap_or_else(|| panic!(concat!("rational ", $name, " overflow or division by zero"))),
                )
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;

            fn $method(self, rhs: &'a Rational) -> Rational {
                $trait::$method(self, *rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add, "addition");
checked_binop!(Sub, sub, checked_sub, "subtraction");
checked_binop!(Mul, mul, checked_mul, "multiplication");
checked_binop!(Div, div, checked_div, "division");

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational::ZERO - self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_display() {
        assert_eq!(r("2/4").to_string(), "1/2");
        assert_eq!(r("0").to_string(), "0/1");
        assert_eq!(r("3/-4").to_string(), "-3/4");
        assert_eq!(r("6/3").to_string(), "2/1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(r("1/3") + r("1/6"), Rational::HALF);
        assert_eq!(r("1/2") * r("2/3"), r("1/3"));
        assert_eq!(r("1/4") - r("3/4"), r("-1/2"));
        assert_eq!(r("1/4") / r("1/2"), Rational::HALF);
        assert_eq!(-r("1/4"), r("-1/4"));
    }

    #[test]
    fn nearest_rounds_to_grid() {
        assert_eq!(Rational::nearest(0.125, 1_000_000).unwrap(), r("1/8"));
        assert_eq!(Rational::nearest(0.2934120444, 1_000_000).unwrap(), r("293412/1000000"));
        assert!(Rational::nearest(f64::NAN, 10).is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = Rational::from_integer(i128::MAX / 2);
        let _ = big * big;
    }

    #[test]
    fn serde_as_string() {
        let x = r("-3/4");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "\"-3/4\"");
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), x);
        assert!(serde_json::from_str::<Rational>("\"1/0\"").is_err());
    }

    proptest! {
        #[test]
        fn display_parse_lossless(p in -1_000_000_000i128..1_000_000_000, q in 1i128..1_000_000_000) {
            let x = Rational::new(p, q).unwrap();
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
            prop_assert_eq!(back.to_string(), x.to_string());
        }
    }
}
