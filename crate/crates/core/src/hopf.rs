//! The graded ring R of general linear groups: comultiplication m*, its
//! twisted companion M*, the GL(0)-component M*_GL, and full cuspidal
//! expansion of words.
//!
//! m* on a single generator follows the standard splitting of the segment
//! string: top part on the left for δ, bottom part on the left for ζ. The
//! twisted map is computed from its definition
//! `M* = (m ⊗ id) ∘ (~ ⊗ m*) ∘ κ ∘ m*`
//! and must agree with the closed forms on generators; that agreement is an
//! acceptance check, not an assumption.

use crate::exps::ExpString;
use crate::formal::FormalSum;
use crate::half::HalfInt;
use crate::segment::Segment;
use crate::word::{GLGen, GLWord, GenKind};
use crate::{Error, Result};

/// Elements of R ⊗ R with exact integer coefficients.
pub type RTensorR = FormalSum<(GLWord, GLWord)>;

/// Bound on cuspidal letters in full shuffle expansions.
pub const LETTER_BOUND: i64 = 14;

/// m* of a single nonunit generator.
///
/// δ\[x,y\] ↦ Σ_{i=x−1}^{y} δ\[i+1,y\] ⊗ δ\[x,i\]
/// ζ\[x,y\] ↦ Σ_{i=x−1}^{y} ζ\[x,i\] ⊗ ζ\[i+1,y\]
pub fn mstar_gen(g: &GLGen) -> RTensorR {
    let seg = g.seg;
    let line = seg.line;
    let mut out = RTensorR::zero();
    let mut i = seg.x - 1;
    while i <= seg.y {
        let low = Segment::new(line, seg.x, i);
        let high = Segment::new(line, i + 1, seg.y);
        let (left, right) = match g.kind {
            GenKind::Delta => (high, low),
            GenKind::Zeta => (low, high),
        };
        out.add_term((word_of(g.kind, left), word_of(g.kind, right)), 1);
        i = i + 1;
    }
    out
}

fn word_of(kind: GenKind, seg: Segment) -> GLWord {
    if seg.is_empty() {
        GLWord::unit()
    } else {
        GLWord::single(GLGen::of_kind(kind, seg))
    }
}

/// m* of a word, extended multiplicatively with componentwise products.
pub fn mstar(w: &GLWord) -> RTensorR {
    let mut acc = RTensorR::singleton((GLWord::unit(), GLWord::unit()));
    for g in w.factors() {
        let part = mstar_gen(g);
        let mut next = RTensorR::zero();
        for ((a, b), c) in acc.iter() {
            for ((x, y), k) in part.iter() {
                next.add_term((a.mul(x), b.mul(y)), c * k);
            }
        }
        acc = next;
    }
    acc
}

/// M* computed from the definition: twist, flip, contragredient, multiply.
pub fn mstar_twisted(w: &GLWord) -> RTensorR {
    let mut out = RTensorR::zero();
    for ((x, y), c) in mstar(w).iter() {
        // κ then ~ ⊗ m*: the y-leg is dualised, the x-leg split again.
        let y_dual = y.contragredient();
        for ((x1, x2), k) in mstar(x).iter() {
            out.add_term((y_dual.mul(x1), x2.clone()), c * k);
        }
    }
    out
}

/// The component of M* landing in R ⊗ 𝔯(GL(0)), computed directly from
/// m*(w) = Σ xᵢ ⊗ yᵢ as Σ xᵢ × ỹᵢ.
pub fn mstar_gl(w: &GLWord) -> FormalSum<GLWord> {
    let mut out = FormalSum::zero();
    for ((x, y), c) in mstar(w).iter() {
        out.add_term(x.mul(&y.contragredient()), c);
    }
    out
}

/// Closed form for M* on a single generator.
///
/// On δ\[x,y\]: Σ_{i=x−1}^{y} Σ_{j=i}^{y} δ\[−i,−x\]×δ\[j+1,y\] ⊗ δ\[i+1,j\]
/// On ζ\[x,y\]: Σ_{x−1≤j≤i≤y} ζ\[−y,−i−1\]×ζ\[x,j\] ⊗ ζ\[j+1,i\]
pub fn mstar_closed_gen(g: &GLGen) -> RTensorR {
    let seg = g.seg;
    let line = seg.line;
    let mut out = RTensorR::zero();
    match g.kind {
        GenKind::Delta => {
            let mut i = seg.x - 1;
            while i <= seg.y {
                let mut j = i;
                while j <= seg.y {
                    let refl = Segment::new(line, -i, -seg.x);
                    let high = Segment::new(line, j + 1, seg.y);
                    let mid = Segment::new(line, i + 1, j);
                    let left = word_of(GenKind::Delta, refl).mul(&word_of(GenKind::Delta, high));
                    out.add_term((left, word_of(GenKind::Delta, mid)), 1);
                    j = j + 1;
                }
                i = i + 1;
            }
        }
        GenKind::Zeta => {
            let mut i = seg.x - 1;
            while i <= seg.y {
                let mut j = seg.x - 1;
                while j <= i {
                    let refl = Segment::new(line, -seg.y, -(i + 1));
                    let low = Segment::new(line, seg.x, j);
                    let mid = Segment::new(line, j + 1, i);
                    let left = word_of(GenKind::Zeta, refl).mul(&word_of(GenKind::Zeta, low));
                    out.add_term((left, word_of(GenKind::Zeta, mid)), 1);
                    j = j + 1;
                }
                i = i + 1;
            }
        }
    }
    out
}

/// Closed form for M*_GL on a single generator.
pub fn mstar_gl_closed_gen(g: &GLGen) -> FormalSum<GLWord> {
    let seg = g.seg;
    let line = seg.line;
    let mut out = FormalSum::zero();
    let mut i = seg.x - 1;
    while i <= seg.y {
        let left = match g.kind {
            GenKind::Delta => {
                let refl = Segment::new(line, -i, -seg.x);
                let high = Segment::new(line, i + 1, seg.y);
                word_of(GenKind::Delta, refl).mul(&word_of(GenKind::Delta, high))
            }
            GenKind::Zeta => {
                let refl = Segment::new(line, -seg.y, -(i + 1));
                let low = Segment::new(line, seg.x, i);
                word_of(GenKind::Zeta, refl).mul(&word_of(GenKind::Zeta, low))
            }
        };
        out.add_term(left, 1);
        i = i + 1;
    }
    out
}

/// All shuffles of `s` into the strings of `acc`, with multiplicity.
fn shuffle_into(acc: FormalSum<ExpString>, s: &[(crate::line::LineId, HalfInt)]) -> FormalSum<ExpString> {
    let mut out = FormalSum::zero();
    for (t, c) in acc.iter() {
        let mut buf = Vec::with_capacity(t.len() + s.len());
        shuffle_rec(&t.entries, s, &mut buf, c, &mut out);
    }
    out
}

fn shuffle_rec(
    a: &[(crate::line::LineId, HalfInt)],
    b: &[(crate::line::LineId, HalfInt)],
    buf: &mut Vec<(crate::line::LineId, HalfInt)>,
    coeff: i64,
    out: &mut FormalSum<ExpString>,
) {
    if a.is_empty() {
        let mut v = buf.clone();
        v.extend_from_slice(b);
        out.add_term(ExpString::new(v), coeff);
        return;
    }
    if b.is_empty() {
        let mut v = buf.clone();
        v.extend_from_slice(a);
        out.add_term(ExpString::new(v), coeff);
        return;
    }
    buf.push(a[0]);
    shuffle_rec(&a[1..], b, buf, coeff, out);
    buf.pop();
    buf.push(b[0]);
    shuffle_rec(a, &b[1..], buf, coeff, out);
    buf.pop();
}

/// Full expansion of a word in the cuspidal-string basis: each factor
/// contributes its string and factors are shuffled together.
pub fn cuspidal_expand(w: &GLWord) -> Result<FormalSum<ExpString>> {
    let letters = w.letters();
    if letters > LETTER_BOUND {
        return Err(Error::WordTooLarge { letters, bound: LETTER_BOUND });
    }
    let mut acc = FormalSum::singleton(ExpString::empty());
    for g in w.factors() {
        acc = shuffle_into(acc, &g.string());
    }
    Ok(acc)
}

/// Coefficient of a string in an expansion.
pub fn string_mult(s: &FormalSum<ExpString>, t: &ExpString) -> i64 {
    s.coeff(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::LineId;

    const L: LineId = LineId(0);

    fn d(x: i64, y: i64) -> GLGen {
        GLGen::delta(Segment::new(L, HalfInt::int(x), HalfInt::int(y)))
    }

    fn z(x: i64, y: i64) -> GLGen {
        GLGen::zeta(Segment::new(L, HalfInt::int(x), HalfInt::int(y)))
    }

    fn w(gens: &[GLGen]) -> GLWord {
        GLWord::canon(gens.iter().copied())
    }

    fn pair(left: &[GLGen], right: &[GLGen]) -> (GLWord, GLWord) {
        (w(left), w(right))
    }

    #[test]
    fn mstar_delta_01() {
        let m = mstar_gen(&d(0, 1));
        let expected: RTensorR = [
            (pair(&[d(0, 1)], &[]), 1),
            (pair(&[d(1, 1)], &[d(0, 0)]), 1),
            (pair(&[], &[d(0, 1)]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn mstar_point_is_primitive() {
        let m = mstar_gen(&d(3, 3));
        let expected: RTensorR =
            [(pair(&[d(3, 3)], &[]), 1), (pair(&[], &[d(3, 3)]), 1)].into_iter().collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn mstar_zeta_01() {
        let m = mstar_gen(&z(0, 1));
        let expected: RTensorR = [
            (pair(&[z(0, 1)], &[]), 1),
            (pair(&[d(0, 0)], &[d(1, 1)]), 1),
            (pair(&[], &[z(0, 1)]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn twisted_delta_01_from_definition() {
        // Substituting i ∈ {−1,0,1}, j ∈ [i,1] into the closed form gives
        // six terms; the definition must reproduce them.
        let m = mstar_twisted(&GLWord::single(d(0, 1)));
        let expected: RTensorR = [
            (pair(&[d(0, 1)], &[]), 1),
            (pair(&[d(1, 1)], &[d(0, 0)]), 1),
            (pair(&[], &[d(0, 1)]), 1),
            (pair(&[d(0, 0), d(1, 1)], &[]), 1),
            (pair(&[d(0, 0)], &[d(1, 1)]), 1),
            (pair(&[d(-1, 0)], &[]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, expected);
        assert_eq!(m, mstar_closed_gen(&d(0, 1)));
    }

    #[test]
    fn twisted_point() {
        let x = HalfInt::halves(5);
        let g = GLGen::point(L, x);
        let m = mstar_twisted(&GLWord::single(g));
        let expected: RTensorR = [
            ((GLWord::single(g), GLWord::unit()), 1),
            ((GLWord::single(GLGen::point(L, -x)), GLWord::unit()), 1),
            ((GLWord::unit(), GLWord::single(g)), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn twisted_unit() {
        let m = mstar_twisted(&GLWord::unit());
        assert_eq!(m, RTensorR::singleton((GLWord::unit(), GLWord::unit())));
    }

    #[test]
    fn gl_component_examples() {
        let m = mstar_gl(&GLWord::single(d(0, 1)));
        let expected: FormalSum<GLWord> =
            [(w(&[d(0, 1)]), 1), (w(&[d(0, 0), d(1, 1)]), 1), (w(&[d(-1, 0)]), 1)]
                .into_iter()
                .collect();
        assert_eq!(m, expected);
        assert_eq!(m, mstar_gl_closed_gen(&d(0, 1)));

        let mz = mstar_gl(&GLWord::single(z(0, 1)));
        let expz: FormalSum<GLWord> =
            [(w(&[z(-1, 0)]), 1), (w(&[d(-1, -1), d(0, 0)]), 1), (w(&[z(0, 1)]), 1)]
                .into_iter()
                .collect();
        assert_eq!(mz, expz);
        assert_eq!(mz, mstar_gl_closed_gen(&z(0, 1)));

        let mp = mstar_gl(&GLWord::single(d(2, 2)));
        let expp: FormalSum<GLWord> =
            [(w(&[d(2, 2)]), 1), (w(&[d(-2, -2)]), 1)].into_iter().collect();
        assert_eq!(mp, expp);
    }

    #[test]
    fn expand_examples() {
        let e = cuspidal_expand(&GLWord::single(d(0, 1))).unwrap();
        assert_eq!(e, FormalSum::singleton(ExpString::on_line(L, &[2, 0])));

        let two = cuspidal_expand(&w(&[d(0, 0), d(1, 1)])).unwrap();
        let expected: FormalSum<ExpString> =
            [(ExpString::on_line(L, &[0, 2]), 1), (ExpString::on_line(L, &[2, 0]), 1)]
                .into_iter()
                .collect();
        assert_eq!(two, expected);

        let three = cuspidal_expand(&w(&[d(0, 1), d(2, 2)])).unwrap();
        let expected: FormalSum<ExpString> = [
            (ExpString::on_line(L, &[4, 2, 0]), 1),
            (ExpString::on_line(L, &[2, 4, 0]), 1),
            (ExpString::on_line(L, &[2, 0, 4]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(three, expected);
    }

    #[test]
    fn double_point_shuffles_coincide() {
        let e = cuspidal_expand(&w(&[d(0, 0), d(0, 0)])).unwrap();
        assert_eq!(string_mult(&e, &ExpString::on_line(L, &[0, 0])), 2);
        assert_eq!(string_mult(&FormalSum::zero(), &ExpString::on_line(L, &[0])), 0);
    }

    #[test]
    fn letter_bound_enforced() {
        let gens: Vec<GLGen> = (0..15).map(|k| d(k, k)).collect();
        let err = cuspidal_expand(&w(&gens)).unwrap_err();
        assert!(matches!(err, Error::WordTooLarge { letters: 15, .. }));
    }
}
