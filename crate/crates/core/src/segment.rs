//! Segments \[x,y\] of cuspidal representations on a line.
//!
//! The empty segment (y = x − 1) acts as the identity of the segment ring
//! and is normalised to the single value \[0,−1\] regardless of where it was
//! produced.

use crate::half::HalfInt;
use crate::line::LineId;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub line: LineId,
    #[serde(rename = "x2", with = "twice")]
    pub x: HalfInt,
    #[serde(rename = "y2", with = "twice")]
    pub y: HalfInt,
}

mod twice {
    use crate::half::HalfInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &HalfInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(v.twice)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<HalfInt, D::Error> {
        Ok(HalfInt { twice: i64::deserialize(d)? })
    }
}

impl Segment {
    /// Builds \[x,y\]; panics unless y − x ∈ ℤ≥−1. The empty case normalises.
    pub fn new(line: LineId, x: HalfInt, y: HalfInt) -> Self {
        let diff = y - x;
        assert!(diff.is_integer() && diff.twice >= -2, "segment [{x},{y}] ill-formed");
        if diff.twice == -2 {
            return Segment::empty(line);
        }
        Segment { line, x, y }
    }

    /// Checked constructor.
    pub fn try_new(line: LineId, x: HalfInt, y: HalfInt) -> Option<Self> {
        let diff = y - x;
        if !diff.is_integer() || diff.twice < -2 {
            return None;
        }
        Some(if diff.twice == -2 { Segment::empty(line) } else { Segment { line, x, y } })
    }

    /// One-point segment \[x\].
    pub fn point(line: LineId, x: HalfInt) -> Self {
        Segment { line, x, y: x }
    }

    pub fn point_int(line: LineId, x: i64) -> Self {
        Segment::point(line, HalfInt::int(x))
    }

    /// The canonical empty segment on this line.
    pub fn empty(line: LineId) -> Self {
        Segment { line, x: HalfInt::int(0), y: HalfInt::int(-1) }
    }

    pub fn is_empty(&self) -> bool {
        self.y - self.x == HalfInt::int(-1)
    }

    /// Number of cuspidal points in the segment.
    pub fn len(&self) -> i64 {
        ((self.y - self.x).twice / 2) + 1
    }

    /// Exponent of the essentially square-integrable δ(\[x,y\]): (x+y)/2.
    /// Returned doubled to stay exact.
    pub fn twice_e(&self) -> i64 {
        (self.x + self.y).twice / 2
    }

    /// Contragredient \[−y,−x\] on the same (selfcontragredient) line.
    pub fn contragredient(&self) -> Segment {
        if self.is_empty() {
            return *self;
        }
        Segment { line: self.line, x: -self.y, y: -self.x }
    }

    /// The points of the segment in ascending order.
    pub fn points(&self) -> impl Iterator<Item = HalfInt> + '_ {
        let n = if self.is_empty() { 0 } else { self.len() };
        let x = self.x;
        (0..n).map(move |k| x + k)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else if self.x == self.y {
            write!(f, "[{}]", self.x)
        } else {
            write!(f, "[{},{}]", self.x, self.y)
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::LineId;

    const L: LineId = LineId(0);

    #[test]
    fn contragredient_negates_and_swaps() {
        let s = Segment::new(L, HalfInt::int(0), HalfInt::int(1));
        let c = s.contragredient();
        assert_eq!(c, Segment::new(L, HalfInt::int(-1), HalfInt::int(0)));
        assert_eq!(c.contragredient(), s);
    }

    #[test]
    fn contragredient_of_point() {
        let s = Segment::point(L, HalfInt::halves(5));
        assert_eq!(s.contragredient(), Segment::point(L, HalfInt::halves(-5)));
    }

    #[test]
    fn empty_normalises_to_unit() {
        let a = Segment::new(L, HalfInt::int(7), HalfInt::int(6));
        let b = Segment::new(L, HalfInt::halves(-3), HalfInt::halves(-5));
        assert_eq!(a, b);
        assert!(a.is_empty());
        assert_eq!(a.contragredient(), a);
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn lengths_and_points() {
        let s = Segment::new(L, HalfInt::halves(1), HalfInt::halves(5));
        assert_eq!(s.len(), 3);
        let pts: Vec<_> = s.points().collect();
        assert_eq!(pts, vec![HalfInt::halves(1), HalfInt::halves(3), HalfInt::halves(5)]);
        assert_eq!(s.twice_e(), 3);
    }
}
