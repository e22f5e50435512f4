//! Commutative words of segment generators.
//!
//! A generator is either δ(Δ) (the essentially square-integrable
//! representation of a segment) or ζ(Δ) (its Zelevinsky companion, the
//! Langlands quotient of the transposed multiset). Products are taken at
//! the Grothendieck level, so a word is a canonical multiset of factors.

use crate::half::HalfInt;
use crate::line::LineId;
use crate::segment::Segment;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Delta,
    Zeta,
}

/// A single generator. One-point segments are normalised to `Delta`,
/// since δ(\[x\]) = ζ(\[x\]) is the cuspidal ν^xρ itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GLGen {
    pub kind: GenKind,
    pub seg: Segment,
}

impl GLGen {
    pub fn delta(seg: Segment) -> Self {
        assert!(!seg.is_empty(), "unit factors are dropped, not stored");
        GLGen { kind: GenKind::Delta, seg }
    }

    pub fn zeta(seg: Segment) -> Self {
        assert!(!seg.is_empty(), "unit factors are dropped, not stored");
        if seg.len() == 1 {
            GLGen { kind: GenKind::Delta, seg }
        } else {
            GLGen { kind: GenKind::Zeta, seg }
        }
    }

    pub fn of_kind(kind: GenKind, seg: Segment) -> Self {
        match kind {
            GenKind::Delta => GLGen::delta(seg),
            GenKind::Zeta => GLGen::zeta(seg),
        }
    }

    /// Cuspidal ν^xρ as a one-point generator.
    pub fn point(line: LineId, x: HalfInt) -> Self {
        GLGen::delta(Segment::point(line, x))
    }

    pub fn len(&self) -> i64 {
        self.seg.len()
    }

    /// Generators are nonunit by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contragredient(&self) -> GLGen {
        GLGen { kind: self.kind, seg: self.seg.contragredient() }
    }

    /// The cuspidal string of the generator: descending for δ, ascending
    /// for ζ.
    pub fn string(&self) -> Vec<(LineId, HalfInt)> {
        let line = self.seg.line;
        let mut pts: Vec<_> = self.seg.points().map(|p| (line, p)).collect();
        if self.kind == GenKind::Delta {
            pts.reverse();
        }
        pts
    }
}

impl PartialOrd for GLGen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GLGen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.seg.line, self.seg.x, self.seg.y, self.kind)
            .cmp(&(other.seg.line, other.seg.x, other.seg.y, other.kind))
    }
}

impl fmt::Display for GLGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.seg.len() == 1 {
            write!(f, "{}", self.seg)
        } else {
            match self.kind {
                GenKind::Delta => write!(f, "d{}", self.seg),
                GenKind::Zeta => write!(f, "z{}", self.seg),
            }
        }
    }
}

impl fmt::Debug for GLGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A canonical multiset of generators; the unit is the empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GLWord {
    factors: Vec<GLGen>,
}

impl GLWord {
    pub fn unit() -> Self {
        GLWord { factors: Vec::new() }
    }

    /// Canonical word of the given factors; empty segments are dropped.
    pub fn canon(factors: impl IntoIterator<Item = GLGen>) -> Self {
        let mut v: Vec<GLGen> = factors.into_iter().filter(|g| !g.seg.is_empty()).collect();
        v.sort();
        GLWord { factors: v }
    }

    pub fn single(g: GLGen) -> Self {
        GLWord::canon([g])
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[GLGen] {
        &self.factors
    }

    /// Total number of cuspidal letters.
    pub fn letters(&self) -> i64 {
        self.factors.iter().map(|g| g.len()).sum()
    }

    /// Grothendieck-level product: multiset union.
    pub fn mul(&self, other: &GLWord) -> GLWord {
        let mut v = self.factors.clone();
        v.extend(other.factors.iter().copied());
        v.sort();
        GLWord { factors: v }
    }

    pub fn push(&self, g: GLGen) -> GLWord {
        let mut v = self.factors.clone();
        v.push(g);
        v.sort();
        GLWord { factors: v }
    }

    /// Word with one occurrence of `g` removed, if present.
    pub fn without(&self, g: &GLGen) -> Option<GLWord> {
        let pos = self.factors.iter().position(|f| f == g)?;
        let mut v = self.factors.clone();
        v.remove(pos);
        Some(GLWord { factors: v })
    }

    pub fn contragredient(&self) -> GLWord {
        GLWord::canon(self.factors.iter().map(|g| g.contragredient()))
    }

    /// Multiset of (line, exponent) letters in the word.
    pub fn support(&self) -> Vec<(LineId, HalfInt)> {
        let mut s: Vec<_> = self.factors.iter().flat_map(|g| g.string()).collect();
        s.sort();
        s
    }
}

impl FromIterator<GLGen> for GLWord {
    fn from_iter<T: IntoIterator<Item = GLGen>>(iter: T) -> Self {
        GLWord::canon(iter)
    }
}

impl fmt::Display for GLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::LineId;

    const L: LineId = LineId(0);

    fn seg(x: i64, y: i64) -> Segment {
        Segment::new(L, HalfInt::int(x), HalfInt::int(y))
    }

    #[test]
    fn canon_is_order_insensitive_and_idempotent() {
        let a = GLGen::delta(seg(1, 1));
        let b = GLGen::delta(seg(0, 0));
        let w1 = GLWord::canon([a, b]);
        let w2 = GLWord::canon([b, a]);
        assert_eq!(w1, w2);
        let again = GLWord::canon(w1.factors().iter().copied());
        assert_eq!(again, w1);
    }

    #[test]
    fn one_point_zeta_and_delta_coincide() {
        let z = GLGen::zeta(seg(2, 2));
        let d = GLGen::delta(seg(2, 2));
        assert_eq!(z, d);
        assert_eq!(GLWord::single(z), GLWord::single(d));
    }

    #[test]
    fn unit_behaviour() {
        let w = GLWord::canon([]);
        assert!(w.is_unit());
        let v = GLWord::single(GLGen::delta(seg(0, 1)));
        assert_eq!(w.mul(&v), v);
    }

    #[test]
    fn strings_run_the_right_way() {
        let d = GLGen::delta(seg(0, 2));
        let z = GLGen::zeta(seg(0, 2));
        let ds: Vec<i64> = d.string().iter().map(|(_, h)| h.as_int().unwrap()).collect();
        let zs: Vec<i64> = z.string().iter().map(|(_, h)| h.as_int().unwrap()).collect();
        assert_eq!(ds, vec![2, 1, 0]);
        assert_eq!(zs, vec![0, 1, 2]);
    }
}
