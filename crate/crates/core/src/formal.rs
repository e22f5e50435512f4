//! Free ℤ-module on an ordered basis: finite integer linear combinations
//! with exact coefficients and no stored zeros.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormalSum<B: Ord> {
    terms: BTreeMap<B, i64>,
}

impl<B: Ord> Default for FormalSum<B> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<B: Ord> FormalSum<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(b: B) -> Self {
        let mut s = Self::zero();
        s.add_term(b, 1);
        s
    }

    pub fn add_term(&mut self, b: B, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, b: &B) -> i64 {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, i64)> {
        self.terms.iter().map(|(b, c)| (b, *c))
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (B, i64)> {
        self.terms.into_iter()
    }

    pub fn scale(mut self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        for c in self.terms.values_mut() {
            *c *= k;
        }
        self
    }

    /// Coefficientwise order: true iff every coefficient of `self` is ≤ the
    /// matching coefficient of `other`.
    pub fn le(&self, other: &Self) -> bool {
        self.terms.iter().all(|(b, c)| *c <= other.coeff(b))
            && other.terms.iter().all(|(b, c)| self.coeff(b) <= *c)
    }

    /// True iff all coefficients are ≥ 0.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| *c >= 0)
    }

    /// Linear extension of a basis map.
    pub fn map_basis<C: Ord>(self, mut f: impl FnMut(B) -> C) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in self.terms {
            out.add_term(f(b), c);
        }
        out
    }

    /// Linear extension of a map into sums.
    pub fn flat_map<C: Ord>(self, mut f: impl FnMut(B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in self.terms {
            for (d, k) in f(b).terms {
                out.add_term(d, c * k);
            }
        }
        out
    }
}

impl<B: Ord> FromIterator<(B, i64)> for FormalSum<B> {
    fn from_iter<T: IntoIterator<Item = (B, i64)>>(iter: T) -> Self {
        let mut s = Self::zero();
        for (b, c) in iter {
            s.add_term(b, c);
        }
        s
    }
}

impl<B: Ord> Add for FormalSum<B> {
    type Output = FormalSum<B>;
    fn add(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        self += rhs;
        self
    }
}

impl<B: Ord> AddAssign for FormalSum<B> {
    fn add_assign(&mut self, rhs: FormalSum<B>) {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
    }
}

impl<B: Ord + Clone> Sub for FormalSum<B> {
    type Output = FormalSum<B>;
    fn sub(mut self, rhs: FormalSum<B>) -> FormalSum<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
        self
    }
}

impl<B: Ord + fmt::Display> fmt::Display for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if *c == 1 {
                    write!(f, "{b}")?;
                } else if *c == -1 {
                    write!(f, "-{b}")?;
                } else {
                    write!(f, "{c}·{b}")?;
                }
            } else if *c == 1 {
                write!(f, " + {b}")?;
            } else if *c == -1 {
                write!(f, " - {b}")?;
            } else if *c > 0 {
                write!(f, " + {c}·{b}")?;
            } else {
                write!(f, " - {}·{b}", -c)?;
            }
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_module_laws() {
        let a: FormalSum<&str> = [("x", 2), ("y", -1)].into_iter().collect();
        let b: FormalSum<&str> = [("y", 1), ("z", 3)].into_iter().collect();
        let c: FormalSum<&str> = [("x", -2), ("z", 1)].into_iter().collect();
        assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        assert_eq!(a.clone() + FormalSum::zero(), a.clone());
        let sum = a + b;
        assert_eq!(sum.coeff(&"y"), 0);
        assert_eq!(sum.len(), 2);
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let mut s: FormalSum<u8> = FormalSum::zero();
        let big = 1i64 << 60;
        s.add_term(0, big);
        s.add_term(0, big - 1);
        assert_eq!(s.coeff(&0), (1i64 << 61) - 1);
    }

    #[test]
    fn coefficientwise_order() {
        let a: FormalSum<&str> = [("x", 1)].into_iter().collect();
        let b: FormalSum<&str> = [("x", 2), ("y", 1)].into_iter().collect();
        assert!(a.le(&b));
        assert!(!b.le(&a));
    }
}
