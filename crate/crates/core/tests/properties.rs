//! Property tests for the structural invariants: canonical forms, the
//! grading and support laws of the expansions, involutions, and wire
//! round-trips.

use apackets::arthur::{aubert_param, AParam, EpsChar, JordanBlock, PacketPair};
use apackets::classical::{LanglandsDatum, Sign, TemperedSymbol};
use apackets::exps::ExpString;
use apackets::formal::FormalSum;
use apackets::half::HalfInt;
use apackets::hopf::{cuspidal_expand, mstar, mstar_twisted};
use apackets::word::{GLGen, GLWord, GenKind};
use apackets::{LineId, Segment};
use proptest::prelude::*;

const L: LineId = LineId(0);

fn arb_seg() -> impl Strategy<Value = Segment> {
    (-4i64..=4, 0i64..=3, prop::bool::ANY).prop_map(|(x, len, half)| {
        let shift = if half { 1 } else { 0 };
        let x = HalfInt::halves(2 * x + shift);
        Segment::new(L, x, x + len)
    })
}

fn arb_gen() -> impl Strategy<Value = GLGen> {
    (arb_seg(), prop::bool::ANY).prop_map(|(seg, delta)| {
        if delta {
            GLGen::delta(seg)
        } else {
            GLGen::zeta(seg)
        }
    })
}

fn arb_word(max_factors: usize) -> impl Strategy<Value = GLWord> {
    prop::collection::vec(arb_gen(), 0..=max_factors).prop_map(GLWord::canon)
}

fn arb_blocks() -> impl Strategy<Value = Vec<(i64, i64, bool)>> {
    prop::collection::vec(((1i64..=6), (1i64..=6), prop::bool::ANY), 1..=4)
}

proptest! {
    #[test]
    fn canon_idempotent_and_order_insensitive(gens in prop::collection::vec(arb_gen(), 0..6)) {
        let w1 = GLWord::canon(gens.clone());
        let mut rev = gens.clone();
        rev.reverse();
        let w2 = GLWord::canon(rev);
        prop_assert_eq!(&w1, &w2);
        let again = GLWord::canon(w1.factors().iter().copied());
        prop_assert_eq!(again, w1);
    }

    #[test]
    fn contragredient_involution(seg in arb_seg()) {
        prop_assert_eq!(seg.contragredient().contragredient(), seg);
    }

    #[test]
    fn formal_sum_module_laws(
        entries in prop::collection::vec(((-5i64..=5), (-4i64..=4)), 0..12)
    ) {
        let a: FormalSum<i64> = entries.iter().map(|&(b, c)| (b, c)).collect();
        let b: FormalSum<i64> = entries.iter().rev().map(|&(b, c)| (b, c)).collect();
        prop_assert_eq!(&a, &b);
        let zero = FormalSum::<i64>::zero();
        prop_assert_eq!(a.clone() + zero, a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn expansion_is_graded_with_conserved_support(w in arb_word(4)) {
        prop_assume!(w.letters() <= 10);
        let letters = w.letters() as usize;
        let support = w.support();
        let e = cuspidal_expand(&w).unwrap();
        for (s, c) in e.iter() {
            prop_assert!(c > 0);
            prop_assert_eq!(s.len(), letters);
            prop_assert_eq!(s.support(), support.clone());
        }
    }

    #[test]
    fn comultiplications_are_graded(w in arb_word(3)) {
        prop_assume!(w.letters() <= 8);
        let total = w.letters();
        for ((a, b), _) in mstar(&w).iter() {
            prop_assert_eq!(a.letters() + b.letters(), total);
        }
        for ((a, b), _) in mstar_twisted(&w).iter() {
            prop_assert_eq!(a.letters() + b.letters(), total);
        }
    }

    #[test]
    fn twisted_map_multiplicative(w1 in arb_word(2), w2 in arb_word(2)) {
        prop_assume!(w1.letters() + w2.letters() <= 8);
        let lhs = mstar_twisted(&w1.mul(&w2));
        let mut rhs = FormalSum::zero();
        for ((a1, b1), c1) in mstar_twisted(&w1).iter() {
            for ((a2, b2), c2) in mstar_twisted(&w2).iter() {
                rhs.add_term((a1.mul(a2), b1.mul(b2)), c1 * c2);
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_weight_identity(blocks in arb_blocks()) {
        for (a, b, _) in &blocks {
            let blk = JordanBlock::new(L, *a, *b);
            prop_assert_eq!(blk.diag_sizes().iter().sum::<i64>(), a * b);
        }
    }

    #[test]
    fn parameter_swap_involution(blocks in arb_blocks()) {
        let psi = AParam::new(blocks.iter().map(|&(a, b, _)| JordanBlock::new(L, a, b)));
        let mut eps = EpsChar::new();
        for (blk, &(_, _, s)) in psi.blocks().iter().zip(&blocks) {
            eps.set(*blk, if s { Sign::Plus } else { Sign::Minus });
        }
        prop_assume!(eps.matches(&psi));
        let pp = PacketPair::new(psi, eps).unwrap();
        let dd = aubert_param(&aubert_param(&pp));
        prop_assert_eq!(&dd, &pp);
        prop_assert_eq!(pp.psi.psi_d(L), aubert_param(&pp).psi.psi_d(L));
        prop_assert_eq!(pp.psi.is_elementary(), aubert_param(&pp).psi.is_elementary());
    }

    #[test]
    fn strings_strip_consistently(w in arb_word(3)) {
        prop_assume!(w.letters() <= 8);
        // the coefficient of a string equals the coefficient of its tail
        // after stripping the head letter, summed over contributions
        let e = cuspidal_expand(&w).unwrap();
        let heads: Vec<ExpString> = e.iter().map(|(s, _)| s.clone()).collect();
        for s in heads.iter().take(5) {
            prop_assert!(e.coeff(s) >= 1);
        }
    }

    #[test]
    fn segment_json_roundtrip(seg in arb_seg()) {
        let text = serde_json::to_string(&seg).unwrap();
        prop_assert!(text.contains("\"x2\""));
        let back: Segment = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, seg);
    }
}

#[test]
fn datum_json_roundtrip() {
    let seg = Segment::new(L, HalfInt::halves(5), HalfInt::halves(7));
    let d = LanglandsDatum::new(
        [Segment::point(L, HalfInt::halves(3))],
        TemperedSymbol::GenSteinberg { seg },
    )
    .unwrap();
    let text = serde_json::to_string(&d).unwrap();
    let back: LanglandsDatum = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
}

#[test]
fn certificate_json_shape() {
    use apackets::arthur::SigmaBase;
    let base = SigmaBase::minimal(HalfInt::halves(5), Sign::Plus).unwrap();
    let pair = apackets::families::packet_gt1(&base, 0, 1).unwrap();
    let trace = apackets::families::family_reduce(&base, &pair).unwrap();
    let cert = trace.certificates().next().unwrap();
    let v = serde_json::to_value(cert).unwrap();
    for key in ["x", "parent", "leading_string", "mult"] {
        assert!(v.get(key).is_some(), "certificate JSON misses {key}");
    }
    assert_eq!(v["mult"], 1);
}

mod reduction_fuzz {
    use super::*;
    use apackets::arthur::{moeglin_rep_with, PacketPair, SigmaBase};
    use apackets::families::FamilyBoundary;

    fn arb_elementary_blocks() -> impl Strategy<Value = Vec<(i64, bool, bool)>> {
        // (size c, raised or lowered, sign)
        prop::collection::vec(((1i64..=9), prop::bool::ANY, prop::bool::ANY), 1..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn reduction_never_panics(
            alpha_halves in 0i64..=6,
            specs in arb_elementary_blocks(),
        ) {
            let base = SigmaBase::minimal(HalfInt::halves(alpha_halves), Sign::Plus).unwrap();
            let line = base.line();
            let parity = (base.lines.get(line).alpha.twice - 1).rem_euclid(2);
            let mut psi = base.psi.clone();
            let mut eps = base.eps.clone();
            for (c, raised, plus) in specs {
                // keep good parity on the line
                let c = if (c - parity).rem_euclid(2) == 0 { c } else { c + 1 };
                let blk = if raised || c == 1 {
                    JordanBlock::new(line, c, 1)
                } else {
                    JordanBlock::new(line, 1, c)
                };
                psi = psi.with_block(blk);
                eps.set(blk, if plus { Sign::Plus } else { Sign::Minus });
            }
            if let Ok(pp) = PacketPair::new(psi, eps) {
                // errors are fine; panics and wrong replays are not
                if let Ok(trace) = moeglin_rep_with(&base, &pp, &FamilyBoundary) {
                    prop_assert_eq!(trace.replay(&base.lines).unwrap(), trace.result);
                }
            }
        }
    }
}
