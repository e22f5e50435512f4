//! Cuspidal exponent strings: ordered sequences of (line, exponent)
//! letters, the basis in which fully expanded Jacquet modules are counted.

use crate::half::HalfInt;
use crate::line::LineId;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpString {
    pub entries: Vec<(LineId, HalfInt)>,
}

impl ExpString {
    pub fn new(entries: Vec<(LineId, HalfInt)>) -> Self {
        ExpString { entries }
    }

    pub fn empty() -> Self {
        ExpString { entries: Vec::new() }
    }

    /// Single-line constructor from doubled exponents; test convenience.
    pub fn on_line(line: LineId, halves: &[i64]) -> Self {
        ExpString { entries: halves.iter().map(|&h| (line, HalfInt::halves(h))).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn head(&self) -> Option<(LineId, HalfInt)> {
        self.entries.first().copied()
    }

    /// String with the first letter removed.
    pub fn tail(&self) -> ExpString {
        ExpString { entries: self.entries[1..].to_vec() }
    }

    pub fn concat(&self, other: &ExpString) -> ExpString {
        let mut v = self.entries.clone();
        v.extend(other.entries.iter().copied());
        ExpString { entries: v }
    }

    /// The letters as a sorted multiset.
    pub fn support(&self) -> Vec<(LineId, HalfInt)> {
        let mut s = self.entries.clone();
        s.sort();
        s
    }
}

impl fmt::Display for ExpString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (_, x)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExpString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
