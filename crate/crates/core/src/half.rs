//! Exact arithmetic in the half-integer lattice ½ℤ.
//!
//! Every exponent that occurs in this crate (segment endpoints, Jacquet
//! exponents, reducibility points) lies in ½ℤ, so we store twice the value
//! as an `i64` and never touch floating point.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// An element of ½ℤ, stored as its doubled value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    /// Twice the represented value.
    pub twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    /// The integer `n` as a half-integer.
    pub fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// The value `n/2`.
    pub fn halves(n: i64) -> Self {
        HalfInt { twice: n }
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// Parses `"3"`, `"-5/2"` or `"2.5"` forms.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return None;
            }
            return num.trim().parse::<i64>().ok().map(HalfInt::halves);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac != "5" {
                return if frac.chars().all(|c| c == '0') {
                    int.parse::<i64>().ok().map(HalfInt::int)
                } else {
                    None
                };
            }
            let neg = int.starts_with('-');
            let whole: i64 = if int == "-" || int.is_empty() { 0 } else { int.parse().ok()? };
            let twice = 2 * whole + if neg || int == "-" { -1 } else { 1 };
            return Some(HalfInt { twice });
        }
        s.parse::<i64>().ok().map(HalfInt::int)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.twice -= rhs.twice;
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice + 2 * rhs }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice - 2 * rhs }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::halves(5);
        let b = HalfInt::int(2);
        assert_eq!(a + b, HalfInt::halves(9));
        assert_eq!(a - b, HalfInt::halves(1));
        assert_eq!(-a, HalfInt::halves(-5));
        assert!(!a.is_integer());
        assert!(b.is_integer());
        assert_eq!(b.as_int(), Some(2));
        assert_eq!(a.as_int(), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(HalfInt::parse("5/2"), Some(HalfInt::halves(5)));
        assert_eq!(HalfInt::parse("-5/2"), Some(HalfInt::halves(-5)));
        assert_eq!(HalfInt::parse("2.5"), Some(HalfInt::halves(5)));
        assert_eq!(HalfInt::parse("-0.5"), Some(HalfInt::halves(-1)));
        assert_eq!(HalfInt::parse("3"), Some(HalfInt::int(3)));
        assert_eq!(HalfInt::parse("-4"), Some(HalfInt::int(-4)));
        assert_eq!(HalfInt::parse("1/3"), None);
    }

    #[test]
    fn display_matches_convention() {
        assert_eq!(HalfInt::halves(5).to_string(), "5/2");
        assert_eq!(HalfInt::halves(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::int(-3).to_string(), "-3");
    }
}
