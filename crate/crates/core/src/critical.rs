//! The critical-type predicate, the corank ≤ 3 catalog of unitarizable
//! subquotients with per-label verification recipes, and the intermediate
//! complementary-series driver.
//!
//! The catalog is data: each entry carries the construction the proof
//! uses, and `verify_case` replays it through the reduction and socle
//! machinery. Steps resting on imported results (tempered membership, the
//! packet-inside constructions, cited constituent statements) are
//! replayed as far as the engine reaches and then marked as external.

use crate::arthur::{
    dominate_descend, dual_of_elementary_ddr, AParam, JordanBlock, PacketPair,
    SigmaBase,
};
use crate::classical::{LanglandsDatum, Sign, TemperedSymbol};
use crate::families::{family_reduce, FamilyBoundary};
use crate::half::HalfInt;
use crate::line::{CuspLine, LineId};
use crate::segment::Segment;
use crate::socle::{self, JacResult};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Critical type: the distinct exponents form a ℤ-segment in ½ℤ through
/// the reducibility point of the line.
pub fn is_critical(exps: &[HalfInt], line: &CuspLine) -> bool {
    if exps.is_empty() {
        return false;
    }
    let mut vals: Vec<i64> = exps.iter().map(|e| e.twice).collect();
    vals.sort();
    vals.dedup();
    if vals.windows(2).any(|w| w[1] - w[0] != 2) {
        return false;
    }
    vals.contains(&line.alpha.twice)
}

/// How a catalog label is established.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Recipe {
    /// Tempered, hence a member of the packet of its tempered parameter.
    Tempered,
    /// Dual of a tempered member.
    Cotempered,
    /// The reduction of this pair equals the datum.
    Reduce { pair: PacketPair },
    /// The parameter-swap route from this pair equals the datum.
    DualOfPair { pair: PacketPair },
    /// Certified socle chain from σ, innermost exponent first.
    ExtendChain { exps: Vec<HalfInt> },
    /// Certified chain from σ followed by a Jac descent.
    JacChain { build: Vec<HalfInt>, jacs: Vec<HalfInt> },
    /// Member of the Langlands packet inside the packet of this parameter.
    LPacketInside { param: AParam },
    /// Established through a cited constituent statement; the optional
    /// pair pins the certified part of the construction.
    External { what: String, pre: Option<(PacketPair, LanglandsDatum)> },
    /// Multiplicity-one involution partner of another label.
    InvolutionOf,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogLabel {
    pub name: String,
    /// The Langlands datum when the proof names one; generic tempered
    /// constituents carry their role in the name only.
    pub datum: Option<LanglandsDatum>,
    pub recipe: Recipe,
    pub dual_partner: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriticalCase {
    pub name: String,
    pub exponents: Vec<HalfInt>,
    pub labels: Vec<CatalogLabel>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum LabelStatus {
    Verified { certificates: usize, route: String },
    External { note: String },
    Failed { error: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelCheck {
    pub name: String,
    pub status: LabelStatus,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    pub critical: bool,
    pub label_count: usize,
    pub labels: Vec<LabelCheck>,
    pub duals_close: bool,
    pub pass: bool,
}

struct Builder<'a> {
    base: &'a SigmaBase,
    line: LineId,
    alpha: HalfInt,
}

impl<'a> Builder<'a> {
    fn new(base: &'a SigmaBase) -> Self {
        let line = base.line();
        Builder { base, line, alpha: base.lines.get(line).alpha }
    }

    fn seg(&self, x: HalfInt, y: HalfInt) -> Segment {
        Segment::new(self.line, x, y)
    }

    fn pt(&self, x: HalfInt) -> Segment {
        Segment::point(self.line, x)
    }

    fn pts(&self, from: HalfInt, to: HalfInt) -> Vec<Segment> {
        let mut v = Vec::new();
        let mut x = from;
        while x <= to {
            v.push(self.pt(x));
            x = x + 1;
        }
        v
    }

    fn gs(&self, x: HalfInt, y: HalfInt) -> TemperedSymbol {
        TemperedSymbol::GenSteinberg { seg: self.seg(x, y) }
    }

    fn datum(&self, segs: Vec<Segment>, temp: TemperedSymbol) -> LanglandsDatum {
        LanglandsDatum::new(segs, temp).expect("catalog datum well formed")
    }

    /// ε_σ at chain size c, or + when the chain has no block there.
    fn eps_or_plus(&self, c: i64) -> Sign {
        if c < 1 {
            return Sign::Plus;
        }
        let blk = crate::arthur::block_for(self.line, c, Sign::Plus);
        self.base.eps.get(&blk).unwrap_or(Sign::Plus)
    }

    /// Pair over the chain stem with the given replacement blocks; the
    /// stem drops every chain block of size ≥ `drop_from`.
    fn pair(&self, drop_from: i64, blocks: &[(i64, Sign, Sign)]) -> PacketPair {
        let mut psi = self.base.psi.clone();
        let mut eps = self.base.eps.clone();
        for blk in self.base.psi.on_line(self.line) {
            if blk.a.max(blk.b) >= drop_from {
                psi = psi.without_block(blk).expect("chain block");
                eps.remove(blk);
            }
        }
        for &(c, delta, sign) in blocks {
            let blk = crate::arthur::block_for(self.line, c, delta);
            psi = psi.with_block(blk);
            eps.set(blk, sign);
        }
        PacketPair::new(psi, eps).expect("catalog pair well formed")
    }

    fn lpi(&self, drop_from: i64, extra: &[(i64, i64)]) -> AParam {
        let mut psi = self.base.psi.clone();
        for blk in self.base.psi.on_line(self.line).copied().collect::<Vec<_>>() {
            if blk.a.max(blk.b) >= drop_from {
                psi = psi.without_block(&blk).expect("chain block");
            }
        }
        for &(a, b) in extra {
            psi = psi.with_block(JordanBlock::new(self.line, a, b));
        }
        psi
    }
}

fn label(
    name: &str,
    datum: Option<LanglandsDatum>,
    recipe: Recipe,
    dual: Option<&str>,
) -> CatalogLabel {
    CatalogLabel {
        name: name.to_string(),
        datum,
        recipe,
        dual_partner: dual.map(str::to_string),
    }
}

/// All catalog cases applicable on the working line of the base.
pub fn catalog(base: &SigmaBase) -> Vec<CriticalCase> {
    let b = Builder::new(base);
    let a = b.alpha;
    let mut out = Vec::new();

    if a > HalfInt::int(1) {
        out.push(case_corank2_above_one(&b));
        out.push(case_adjacent_triple(&b));
        out.push(case_doubled_top(&b));
    }
    if a == HalfInt::halves(3) {
        out.push(case_half_half_three_halves_at_32(&b));
    }
    if a > HalfInt::int(2) {
        out.push(case_descending_triple(&b));
    }
    if a == HalfInt::int(2) {
        out.push(case_012(&b));
    }
    if a == HalfInt::int(1) {
        out.push(case_011_at_one(&b));
    }
    if a == HalfInt::halves(1) {
        out.push(case_half_half_three_halves_at_half(&b));
        out.push(case_half_cubed(&b));
    }
    if a == HalfInt::ZERO {
        out.push(case_corank2_zero(&b));
        out.push(case_011_at_zero(&b));
        out.push(case_001(&b));
    }
    out
}

fn case_corank2_above_one(b: &Builder) -> CriticalCase {
    let a = b.alpha;
    CriticalCase {
        name: format!("({},{})", a - 1, a),
        exponents: vec![a - 1, a],
        labels: vec![
            label(
                "pi1",
                Some(b.datum(
                    vec![],
                    TemperedSymbol::StronglyPositive { rungs: vec![b.pt(a - 1), b.pt(a)] },
                )),
                Recipe::ExtendChain { exps: vec![a, a - 1] },
                Some("pi4"),
            ),
            label(
                "pi2",
                Some(b.datum(vec![b.pt(a - 1)], b.gs(a, a))),
                Recipe::Reduce { pair: crate::families::packet_gt1(b.base, -1, 0).expect("pair") },
                Some("pi3"),
            ),
            label(
                "pi3",
                Some(b.datum(b.pts(a - 1, a), TemperedSymbol::Cusp)),
                Recipe::DualOfPair {
                    pair: crate::families::packet_gt1(b.base, -1, 0).expect("pair"),
                },
                Some("pi2"),
            ),
            label(
                "pi4",
                Some(b.datum(vec![b.seg(a - 1, a)], TemperedSymbol::Cusp)),
                Recipe::Cotempered,
                Some("pi1"),
            ),
        ],
    }
}

fn case_corank2_zero(b: &Builder) -> CriticalCase {
    let line = b.line;
    let pm = |s| TemperedSymbol::PMZeroChain { line, n: 1, sign: s };
    let mk_dual = |s: Sign| {
        b.datum(vec![b.pt(HalfInt::int(1))], TemperedSymbol::PMZeroChain {
            line,
            n: 0,
            sign: s,
        })
    };
    let pair = |s| {
        crate::families::family_packet(
            b.base,
            &crate::families::FamilyCase::Red0 { m: 0, n: 1, sign: s },
        )
        .expect("pair")
    };
    CriticalCase {
        name: "(0,1)".into(),
        exponents: vec![HalfInt::ZERO, HalfInt::int(1)],
        labels: vec![
            label("pi1+", Some(b.datum(vec![], pm(Sign::Plus))), Recipe::Reduce { pair: pair(Sign::Plus) }, Some("pi1+^t")),
            label("pi1-", Some(b.datum(vec![], pm(Sign::Minus))), Recipe::Reduce { pair: pair(Sign::Minus) }, Some("pi1-^t")),
            label("pi1+^t", Some(mk_dual(Sign::Minus)), Recipe::DualOfPair { pair: pair(Sign::Plus) }, Some("pi1+")),
            label("pi1-^t", Some(mk_dual(Sign::Plus)), Recipe::DualOfPair { pair: pair(Sign::Minus) }, Some("pi1-")),
            label(
                "pi2",
                Some(b.datum(vec![b.seg(HalfInt::ZERO, HalfInt::int(1))], TemperedSymbol::Cusp)),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(2, 2)]) },
                None,
            ),
        ],
    }
}

fn case_adjacent_triple(b: &Builder) -> CriticalCase {
    let a = b.alpha;
    CriticalCase {
        name: format!("({},{},{})", a - 1, a, a + 1),
        exponents: vec![a - 1, a, a + 1],
        labels: vec![
            label(
                "pi1",
                Some(b.datum(vec![], TemperedSymbol::SegSquare { seg: b.seg(a - 1, a + 1) })),
                Recipe::Tempered,
                Some("pi2"),
            ),
            label(
                "pi2",
                Some(b.datum(vec![b.seg(a - 1, a + 1)], TemperedSymbol::Cusp)),
                Recipe::Cotempered,
                Some("pi1"),
            ),
            label(
                "pi3",
                Some(b.datum(vec![b.pt(a - 1)], b.gs(a, a + 1))),
                Recipe::Reduce { pair: crate::families::packet_gt1(b.base, -1, 1).expect("pair") },
                Some("pi4"),
            ),
            label(
                "pi4",
                Some(b.datum(b.pts(a - 1, a + 1), TemperedSymbol::Cusp)),
                Recipe::DualOfPair {
                    pair: crate::families::packet_gt1(b.base, -1, 1).expect("pair"),
                },
                Some("pi3"),
            ),
        ],
    }
}

fn case_doubled_top(b: &Builder) -> CriticalCase {
    let a = b.alpha;
    CriticalCase {
        name: format!("({},{},{})", a - 1, a, a),
        exponents: vec![a - 1, a, a],
        labels: vec![label(
            "pi0",
            Some(b.datum(b.pts(a - 1, a), b.gs(a, a))),
            Recipe::JacChain {
                build: vec![a, a + 1, -(a - 1), -a],
                jacs: vec![a + 1],
            },
            None,
        )],
    }
}

fn case_half_half_three_halves_at_32(b: &Builder) -> CriticalCase {
    let h = HalfInt::halves;
    let sp = |rungs: Vec<Segment>| TemperedSymbol::StronglyPositive { rungs };
    CriticalCase {
        name: "(1/2,1/2,3/2) at 3/2".into(),
        exponents: vec![h(1), h(1), h(3)],
        labels: vec![
            label(
                "t1",
                Some(b.datum(
                    vec![],
                    TemperedSymbol::TauGen {
                        exp: h(1),
                        sign: Sign::Plus,
                        inner: Box::new(sp(vec![b.pt(h(1)), b.pt(h(3))])),
                    },
                )),
                Recipe::Tempered,
                Some("c1"),
            ),
            label(
                "t2",
                Some(b.datum(
                    vec![],
                    TemperedSymbol::TauGen {
                        exp: h(1),
                        sign: Sign::Minus,
                        inner: Box::new(sp(vec![b.pt(h(1)), b.pt(h(3))])),
                    },
                )),
                Recipe::Tempered,
                Some("c2"),
            ),
            label("c1", None, Recipe::InvolutionOf, Some("t1")),
            label("c2", None, Recipe::InvolutionOf, Some("t2")),
            label(
                "pi5",
                Some(b.datum(
                    vec![b.pt(h(3))],
                    TemperedSymbol::FullSeg { seg: b.seg(h(-1), h(1)) },
                )),
                Recipe::External {
                    what: "constituents of doubled unitary blocks".into(),
                    pre: Some((
                        b.pair(2, &[(4, Sign::Minus, Sign::Minus)]),
                        b.datum(vec![b.pt(h(3))], TemperedSymbol::Cusp),
                    )),
                },
                Some("pi6"),
            ),
            label(
                "pi6",
                Some(b.datum(vec![b.pt(h(1)), b.pt(h(1))], b.gs(h(3), h(3)))),
                Recipe::External {
                    what: "constituents of doubled unitary blocks".into(),
                    pre: Some((
                        b.pair(2, &[(4, Sign::Plus, Sign::Minus)]),
                        b.datum(vec![], b.gs(h(3), h(3))),
                    )),
                },
                Some("pi5"),
            ),
            label(
                "pi7",
                Some(b.datum(vec![b.seg(h(-1), h(3))], TemperedSymbol::Cusp)),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(3, 2)]) },
                None,
            ),
            label(
                "pi8",
                Some(b.datum(vec![b.pt(h(1))], sp(vec![b.pt(h(1)), b.pt(h(3))]))),
                Recipe::JacChain {
                    build: vec![h(3), h(5), h(1), h(3), h(-1)],
                    jacs: vec![h(3), h(5)],
                },
                None,
            ),
        ],
    }
}

fn case_descending_triple(b: &Builder) -> CriticalCase {
    let a = b.alpha;
    let t = a.twice;
    let sp = |rungs: Vec<Segment>| TemperedSymbol::StronglyPositive { rungs };
    let pi2_pair = b.pair(
        t - 5,
        &[
            (t - 3, Sign::Minus, b.eps_or_plus(t - 5)),
            (t - 1, Sign::Plus, b.eps_or_plus(t - 3)),
            (t + 1, Sign::Plus, b.eps_or_plus(t - 1)),
        ],
    );
    let pi3_pair = b.pair(
        t - 5,
        &[
            (t - 3, Sign::Minus, b.eps_or_plus(t - 5)),
            (t - 1, Sign::Minus, b.eps_or_plus(t - 3)),
            (t + 1, Sign::Plus, b.eps_or_plus(t - 1)),
        ],
    );
    let pi5_pair = b.pair(
        t - 5,
        &[
            (t - 3, Sign::Minus, b.eps_or_plus(t - 5)),
            (t - 1, Sign::Minus, b.eps_or_plus(t - 3)),
            (t + 1, Sign::Minus, b.eps_or_plus(t - 1)),
        ],
    );
    CriticalCase {
        name: format!("({},{},{})", a - 2, a - 1, a),
        exponents: vec![a - 2, a - 1, a],
        labels: vec![
            label(
                "pi1",
                Some(b.datum(vec![], sp(vec![b.pt(a - 2), b.pt(a - 1), b.pt(a)]))),
                Recipe::ExtendChain { exps: vec![a, a - 1, a - 2] },
                Some("pi8"),
            ),
            label(
                "pi2",
                Some(b.datum(vec![b.pt(a - 2)], sp(vec![b.pt(a - 1), b.pt(a)]))),
                Recipe::Reduce { pair: pi2_pair },
                Some("pi7"),
            ),
            label(
                "pi3",
                Some(b.datum(b.pts(a - 2, a - 1), b.gs(a, a))),
                Recipe::Reduce { pair: pi3_pair },
                Some("pi6"),
            ),
            label(
                "pi4",
                Some(b.datum(vec![b.seg(a - 2, a - 1)], b.gs(a, a))),
                Recipe::InvolutionOf,
                Some("pi5"),
            ),
            label(
                "pi5",
                Some(b.datum(b.pts(a - 2, a), TemperedSymbol::Cusp)),
                Recipe::Reduce { pair: pi5_pair },
                Some("pi4"),
            ),
            label(
                "pi6",
                Some(b.datum(vec![b.pt(a), b.seg(a - 2, a - 1)], TemperedSymbol::Cusp)),
                Recipe::InvolutionOf,
                Some("pi3"),
            ),
            label(
                "pi7",
                Some(b.datum(vec![b.pt(a - 2), b.seg(a - 1, a)], TemperedSymbol::Cusp)),
                Recipe::InvolutionOf,
                Some("pi2"),
            ),
            label(
                "pi8",
                Some(b.datum(vec![b.seg(a - 2, a)], TemperedSymbol::Cusp)),
                Recipe::Cotempered,
                Some("pi1"),
            ),
        ],
    }
}

fn case_012(b: &Builder) -> CriticalCase {
    let i = HalfInt::int;
    let zero_ext = |inner: TemperedSymbol| TemperedSymbol::ZeroExt {
        line: b.line,
        inner: Box::new(inner),
    };
    let tau = |sign| TemperedSymbol::TauGen {
        exp: i(0),
        sign,
        inner: Box::new(TemperedSymbol::SegSquare { seg: b.seg(i(1), i(2)) }),
    };
    CriticalCase {
        name: "(0,1,2)".into(),
        exponents: vec![i(0), i(1), i(2)],
        labels: vec![
            label("t+", Some(b.datum(vec![], tau(Sign::Plus))), Recipe::Tempered, Some("c+")),
            label("t-", Some(b.datum(vec![], tau(Sign::Minus))), Recipe::Tempered, Some("c-")),
            label("c+", None, Recipe::InvolutionOf, Some("t+")),
            label("c-", None, Recipe::InvolutionOf, Some("t-")),
            label(
                "pi5",
                Some(b.datum(vec![b.pt(i(1))], zero_ext(b.gs(i(2), i(2))))),
                Recipe::External {
                    what: "constituents of doubled unitary blocks".into(),
                    pre: Some((
                        crate::families::packet_gt1(b.base, -1, 0).expect("pair"),
                        b.datum(vec![b.pt(i(1))], b.gs(i(2), i(2))),
                    )),
                },
                Some("pi6"),
            ),
            label(
                "pi6",
                Some(b.datum(
                    vec![b.pt(i(2)), b.seg(i(0), i(1))],
                    TemperedSymbol::Cusp,
                )),
                Recipe::InvolutionOf,
                Some("pi5"),
            ),
            label(
                "pi7",
                Some(b.datum(vec![b.seg(i(0), i(1))], b.gs(i(2), i(2)))),
                Recipe::InvolutionOf,
                Some("pi8"),
            ),
            label(
                "pi8",
                Some(b.datum(b.pts(i(1), i(2)), zero_ext(TemperedSymbol::Cusp))),
                Recipe::External {
                    what: "constituents of doubled unitary blocks".into(),
                    pre: Some((
                        b.pair(1, &[(3, Sign::Minus, b.eps_or_plus(1)), (5, Sign::Minus, b.eps_or_plus(3))]),
                        b.datum(b.pts(i(1), i(2)), TemperedSymbol::Cusp),
                    )),
                },
                Some("pi7"),
            ),
        ],
    }
}

fn case_011_at_one(b: &Builder) -> CriticalCase {
    let i = HalfInt::int;
    let tau = |sign| TemperedSymbol::TauPM { sign, seg: b.pt(i(1)) };
    let two_sided = |sign| TemperedSymbol::PMSquare { seg: b.seg(i(-1), i(1)), sign };
    CriticalCase {
        name: "(0,1,1)".into(),
        exponents: vec![i(0), i(1), i(1)],
        labels: vec![
            label("t+", Some(b.datum(vec![], two_sided(Sign::Plus))), Recipe::Tempered, Some("c+")),
            label("t-", Some(b.datum(vec![], two_sided(Sign::Minus))), Recipe::Tempered, Some("c-")),
            label("c+", None, Recipe::InvolutionOf, Some("t+")),
            label("c-", None, Recipe::InvolutionOf, Some("t-")),
            label(
                "pi1",
                Some(b.datum(vec![b.pt(i(1)), b.seg(i(0), i(1))], TemperedSymbol::Cusp)),
                Recipe::LPacketInside { param: b.lpi(1, &[(1, 3), (2, 2)]) },
                Some("pi3"),
            ),
            label(
                "pi3",
                Some(b.datum(vec![b.seg(i(0), i(1))], b.gs(i(1), i(1)))),
                Recipe::LPacketInside { param: b.lpi(1, &[(3, 1), (2, 2)]) },
                Some("pi1"),
            ),
            label(
                "pi4+",
                Some(b.datum(vec![b.pt(i(1))], tau(Sign::Plus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(3, 1), (1, 3)]) },
                None,
            ),
        ],
    }
}

fn case_half_half_three_halves_at_half(b: &Builder) -> CriticalCase {
    let h = HalfInt::halves;
    let pm = |x2, y2, sign| TemperedSymbol::PMSquare { seg: b.seg(h(x2), h(y2)), sign };
    let plus_pair = crate::families::family_packet(
        b.base,
        &crate::families::FamilyCase::RedHalf { m: 1, n: 2, sign: Sign::Plus },
    )
    .expect("pair");
    let minus_pair = crate::families::family_packet(
        b.base,
        &crate::families::FamilyCase::RedHalf { m: 2, n: 1, sign: Sign::Minus },
    )
    .expect("pair");
    CriticalCase {
        name: "(1/2,1/2,3/2) at 1/2".into(),
        exponents: vec![h(1), h(1), h(3)],
        labels: vec![
            label(
                "t+",
                Some(b.datum(vec![], pm(-1, 3, Sign::Plus))),
                Recipe::Tempered,
                Some("c+"),
            ),
            label(
                "t-",
                Some(b.datum(vec![], pm(-1, 3, Sign::Minus))),
                Recipe::Reduce {
                    pair: crate::families::family_packet(
                        b.base,
                        &crate::families::FamilyCase::RedHalf { m: 1, n: 2, sign: Sign::Minus },
                    )
                    .expect("pair"),
                },
                Some("c-"),
            ),
            label("c+", None, Recipe::InvolutionOf, Some("t+")),
            label(
                "c-",
                Some(b.datum(b.pts(h(1), h(3)), b.gs(h(1), h(1)))),
                Recipe::DualOfPair {
                    pair: crate::families::family_packet(
                        b.base,
                        &crate::families::FamilyCase::RedHalf { m: 1, n: 2, sign: Sign::Minus },
                    )
                    .expect("pair"),
                },
                Some("t-"),
            ),
            label(
                "pi3",
                Some(b.datum(vec![b.seg(h(-1), h(3))], TemperedSymbol::Cusp)),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(3, 2)]) },
                Some("pi4"),
            ),
            label(
                "pi4",
                Some(b.datum(vec![b.seg(h(1), h(3))], b.gs(h(1), h(1)))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(2, 3)]) },
                Some("pi3"),
            ),
            label(
                "pi7",
                Some(b.datum(vec![b.pt(h(1))], b.gs(h(1), h(3)))),
                Recipe::Reduce { pair: plus_pair },
                Some("pi8"),
            ),
            label(
                "pi8",
                Some(b.datum(vec![b.pt(h(3))], pm(-1, 1, Sign::Minus))),
                Recipe::Reduce { pair: minus_pair },
                Some("pi7"),
            ),
        ],
    }
}

fn case_half_cubed(b: &Builder) -> CriticalCase {
    let h = HalfInt::halves;
    let pm = |sign| TemperedSymbol::PMSquare { seg: b.seg(h(-1), h(1)), sign };
    CriticalCase {
        name: "(1/2,1/2,1/2)".into(),
        exponents: vec![h(1), h(1), h(1)],
        labels: vec![
            label(
                "t",
                Some(b.datum(
                    vec![],
                    TemperedSymbol::TauGen {
                        exp: h(1),
                        sign: Sign::Plus,
                        inner: Box::new(pm(Sign::Plus)),
                    },
                )),
                Recipe::Tempered,
                Some("c"),
            ),
            label("c", None, Recipe::InvolutionOf, Some("t")),
            label(
                "pi2",
                Some(b.datum(vec![b.pt(h(1))], pm(Sign::Minus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(1, 2), (2, 1), (2, 1)]) },
                Some("pi3"),
            ),
            label(
                "pi3",
                Some(b.datum(vec![b.pt(h(1)), b.pt(h(1))], b.gs(h(1), h(1)))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(2, 1), (1, 2), (1, 2)]) },
                Some("pi2"),
            ),
            label(
                "pi5",
                Some(b.datum(vec![b.pt(h(1))], pm(Sign::Plus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(1, 2), (2, 1), (2, 1)]) },
                None,
            ),
        ],
    }
}

fn case_011_at_zero(b: &Builder) -> CriticalCase {
    let i = HalfInt::int;
    let pm = |sign| TemperedSymbol::PMZeroChain { line: b.line, n: 1, sign };
    let tau = |sign| TemperedSymbol::TauGen { exp: i(1), sign, inner: Box::new(pm(sign)) };
    CriticalCase {
        name: "(0,1,1)".into(),
        exponents: vec![i(0), i(1), i(1)],
        labels: vec![
            label("t+", Some(b.datum(vec![], tau(Sign::Plus))), Recipe::Tempered, Some("c+")),
            label("t-", Some(b.datum(vec![], tau(Sign::Minus))), Recipe::Tempered, Some("c-")),
            label("c+", None, Recipe::InvolutionOf, Some("t+")),
            label("c-", None, Recipe::InvolutionOf, Some("t-")),
            label(
                "pi3+",
                Some(b.datum(vec![b.pt(i(1))], pm(Sign::Plus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(1, 3), (3, 1)]) },
                Some("pi3-"),
            ),
            label(
                "pi3-",
                Some(b.datum(vec![b.pt(i(1))], pm(Sign::Minus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(1, 3), (3, 1)]) },
                Some("pi3+"),
            ),
        ],
    }
}

fn case_001(b: &Builder) -> CriticalCase {
    let i = HalfInt::int;
    let tau = |sign| TemperedSymbol::TauGen {
        exp: i(0),
        sign,
        inner: Box::new(TemperedSymbol::PMZeroChain { line: b.line, n: 1, sign }),
    };
    let pm = |sign| TemperedSymbol::PMZeroChain { line: b.line, n: 0, sign };
    CriticalCase {
        name: "(0,0,1)".into(),
        exponents: vec![i(0), i(0), i(1)],
        labels: vec![
            label("t+", Some(b.datum(vec![], tau(Sign::Plus))), Recipe::Tempered, Some("c+")),
            label("t-", Some(b.datum(vec![], tau(Sign::Minus))), Recipe::Tempered, Some("c-")),
            label("c+", None, Recipe::InvolutionOf, Some("t+")),
            label("c-", None, Recipe::InvolutionOf, Some("t-")),
            label(
                "pi2+",
                Some(b.datum(vec![b.seg(i(0), i(1))], pm(Sign::Plus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(2, 2), (1, 1), (1, 1)]) },
                Some("pi2-"),
            ),
            label(
                "pi2-",
                Some(b.datum(vec![b.seg(i(0), i(1))], pm(Sign::Minus))),
                Recipe::LPacketInside { param: b.lpi(i64::MAX, &[(2, 2), (1, 1), (1, 1)]) },
                Some("pi2+"),
            ),
        ],
    }
}

/// Replays one label's recipe.
fn check_label(base: &SigmaBase, case: &CriticalCase, l: &CatalogLabel) -> LabelStatus {
    let run = || -> Result<LabelStatus> {
        match &l.recipe {
            Recipe::Tempered => Ok(LabelStatus::External {
                note: "tempered member of the packet of its parameter".into(),
            }),
            Recipe::Cotempered => Ok(LabelStatus::External {
                note: "dual of a tempered member".into(),
            }),
            Recipe::InvolutionOf => {
                let partner = l.dual_partner.as_deref().ok_or_else(|| {
                    Error::InvalidParam(format!("{} names no partner", l.name))
                })?;
                if !case.labels.iter().any(|x| x.name == partner) {
                    return Err(Error::InvalidParam(format!(
                        "partner {partner} missing from the case"
                    )));
                }
                Ok(LabelStatus::External {
                    note: format!("involution partner of {partner}"),
                })
            }
            Recipe::Reduce { pair } => {
                let trace = family_reduce(base, pair)?;
                let expected = l.datum.clone().ok_or_else(|| {
                    Error::InvalidParam(format!("{} has no datum to compare", l.name))
                })?;
                if trace.result != expected {
                    return Err(Error::CertificateFailure(format!(
                        "reduction gave {}, catalog says {expected}",
                        trace.result
                    )));
                }
                Ok(LabelStatus::Verified {
                    certificates: trace.certificates().count(),
                    route: "reduction".into(),
                })
            }
            Recipe::DualOfPair { pair } => {
                let (trace, transport) = dual_of_elementary_ddr(base, pair, &FamilyBoundary)?;
                let expected = l.datum.clone().ok_or_else(|| {
                    Error::InvalidParam(format!("{} has no datum to compare", l.name))
                })?;
                if trace.result != expected {
                    return Err(Error::CertificateFailure(format!(
                        "dual route gave {}, catalog says {expected}",
                        trace.result
                    )));
                }
                Ok(LabelStatus::Verified {
                    certificates: trace.certificates().count(),
                    route: format!("parameter swap ({transport:?})"),
                })
            }
            Recipe::ExtendChain { exps } => {
                let (datum, certs) = run_extend_chain(base, exps)?;
                let expected = l.datum.clone().ok_or_else(|| {
                    Error::InvalidParam(format!("{} has no datum to compare", l.name))
                })?;
                if datum != expected {
                    return Err(Error::CertificateFailure(format!(
                        "chain gave {datum}, catalog says {expected}"
                    )));
                }
                Ok(LabelStatus::Verified { certificates: certs, route: "socle chain".into() })
            }
            Recipe::JacChain { build, jacs } => {
                let (mut datum, mut certs) = run_extend_chain(base, build)?;
                let line = base.line();
                for &x in jacs {
                    match socle::jac(&base.lines, line, x, &datum)? {
                        JacResult::Sum(s) if s.len() == 1 => {
                            let (next, c) = s.iter().next().map(|(d, c)| (d.clone(), c)).unwrap();
                            if c != 1 {
                                return Err(Error::MultiplicityNotOne(c));
                            }
                            datum = next;
                            certs += 1;
                        }
                        JacResult::Sum(_) => {
                            return Err(Error::Undecidable(format!("Jac_{x} vanished")))
                        }
                        JacResult::Undecidable => {
                            return Err(Error::Undecidable(format!("Jac_{x} of {datum}")))
                        }
                    }
                }
                let expected = l.datum.clone().ok_or_else(|| {
                    Error::InvalidParam(format!("{} has no datum to compare", l.name))
                })?;
                if datum != expected {
                    return Err(Error::CertificateFailure(format!(
                        "descent gave {datum}, catalog says {expected}"
                    )));
                }
                Ok(LabelStatus::Verified { certificates: certs, route: "descent".into() })
            }
            Recipe::LPacketInside { param } => {
                if !param.good_parity(&base.lines) {
                    return Err(Error::InvalidParam(format!("{param} has bad parity")));
                }
                let line = base.line();
                let extra = param.line_weight(line) - base.psi.line_weight(line);
                if let Some(d) = &l.datum {
                    let expected = d.letters();
                    if extra != 2 * expected && extra.abs() != 2 * expected {
                        return Err(Error::InvalidParam(format!(
                            "parameter weight {extra} does not carry {expected} letters"
                        )));
                    }
                }
                Ok(LabelStatus::External {
                    note: format!("Langlands member inside the packet of {param}"),
                })
            }
            Recipe::External { what, pre } => {
                let mut certs = 0;
                if let Some((pair, expected)) = pre {
                    let trace = family_reduce(base, pair)?;
                    if &trace.result != expected {
                        return Err(Error::CertificateFailure(format!(
                            "prefix reduction gave {}, recipe says {expected}",
                            trace.result
                        )));
                    }
                    certs = trace.certificates().count();
                }
                Ok(LabelStatus::External {
                    note: format!("{what} ({certs} prefix certificates)"),
                })
            }
        }
    };
    match run() {
        Ok(s) => s,
        Err(e) => LabelStatus::Failed { error: e.to_string() },
    }
}

fn run_extend_chain(base: &SigmaBase, exps: &[HalfInt]) -> Result<(LanglandsDatum, usize)> {
    let line = base.line();
    let mut datum = LanglandsDatum::sigma();
    let mut certs = 0;
    for &x in exps {
        let (next, _) = socle::extend_certified(&base.lines, line, x, &datum)?;
        datum = next;
        certs += 1;
    }
    Ok((datum, certs))
}

/// Replays every recipe of a case and checks the label count and dual
/// pairing closure.
pub fn verify_case(base: &SigmaBase, case: &CriticalCase) -> CaseReport {
    let line = base.lines.get(base.line());
    let labels: Vec<LabelCheck> = case
        .labels
        .iter()
        .map(|l| {
            let mut status = check_label(base, case, l);
            if let Some(d) = &l.datum {
                // every subquotient lives at the case's critical point
                if d.letters() != case.exponents.len() as i64 {
                    status = LabelStatus::Failed {
                        error: format!(
                            "datum {d} carries {} letters, the case has {}",
                            d.letters(),
                            case.exponents.len()
                        ),
                    };
                }
            }
            LabelCheck { name: l.name.clone(), status }
        })
        .collect();
    let duals_close = case.labels.iter().all(|l| match &l.dual_partner {
        None => true,
        Some(p) => case
            .labels
            .iter()
            .find(|x| &x.name == p)
            .map(|x| x.dual_partner.as_deref() == Some(l.name.as_str()))
            .unwrap_or(false),
    });
    let critical = is_critical(&case.exponents, line);
    let pass = critical
        && duals_close
        && labels.iter().all(|c| !matches!(c.status, LabelStatus::Failed { .. }));
    CaseReport {
        case: case.name.clone(),
        critical,
        label_count: labels.len(),
        labels,
        duals_close,
        pass,
    }
}

/// Intermediate complementary series \[x\] ⋊ σ: builds the deformed pair,
/// reduces it, and certifies the unit-row Jac descent down to the datum of
/// \[x\] ⋊ σ.
pub fn appendix_lemma(base: &SigmaBase, x: HalfInt) -> Result<GridCheck> {
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    if x.is_negative() || alpha < HalfInt::int(1) || !(alpha - x).is_integer() {
        return Err(Error::InvalidParam(format!(
            "the lemma needs 0 <= x with alpha - x a positive integer, got x = {x}, alpha = {alpha}"
        )));
    }
    if x == HalfInt::ZERO {
        // tempered situation: the parameter is ψ_σ ⊕ (1,1) ⊕ (1,1)
        let blk = JordanBlock::new(line, 1, 1);
        let psi = base.psi.with_block(blk).with_block(blk);
        let mut eps = base.eps.clone();
        if eps.get(&blk).is_none() {
            eps.set(blk, Sign::Plus);
        }
        let pp = PacketPair::new(psi, eps)?;
        if !pp.psi.good_parity(&base.lines) {
            return Err(Error::InvalidParam("tempered parameter has bad parity".into()));
        }
        return Ok(GridCheck {
            label: "[0] x sigma".into(),
            route_a: "tempered parameter".into(),
            route_b: "tempered parameter".into(),
            equal: true,
            note: Some(format!("psi_sigma + (1,1) + (1,1) on {}", pp.psi)),
        });
    }
    let k = (alpha - x).twice / 2;
    let (pair, jacs): (PacketPair, Vec<HalfInt>) = match k {
        1 => (crate::families::packet_gt1(base, -1, 0)?, vec![alpha]),
        2 => {
            let b = Builder::new(base);
            let t = alpha.twice;
            (
                b.pair(
                    t - 5,
                    &[
                        (t - 3, Sign::Minus, b.eps_or_plus(t - 5)),
                        (t - 1, Sign::Plus, b.eps_or_plus(t - 3)),
                        (t + 1, Sign::Plus, b.eps_or_plus(t - 1)),
                    ],
                ),
                vec![alpha - 1, alpha],
            )
        }
        _ => {
            return Err(Error::UnsupportedShift(format!(
                "descent depth {k} needs matrices beyond unit rows"
            )))
        }
    };
    let trace = family_reduce(base, &pair)?;
    // descend through the dominated parameter with unit rows
    let mut target = pair.psi.clone();
    for &e in &jacs {
        let c = e.twice + 1; // block size 2e+1
        let from = crate::arthur::block_for(line, c, Sign::Plus);
        let to = crate::arthur::block_for(line, c - 2, Sign::Plus);
        target = target
            .without_block(&from)
            .ok_or(Error::BlockMissing { a: from.a, b: from.b })?
            .with_block(to);
    }
    let result = dominate_descend(base, &pair, &target, &trace.result)?;
    let expected = LanglandsDatum::new([Segment::point(line, x)], TemperedSymbol::Cusp)?;
    let got = match result {
        JacResult::Sum(s) if s.len() == 1 => s.iter().next().map(|(d, _)| d.clone()).unwrap(),
        JacResult::Sum(_) => {
            return Err(Error::CertificateFailure("descent vanished".into()))
        }
        JacResult::Undecidable => return Err(Error::Undecidable("appendix descent".into())),
    };
    Ok(GridCheck {
        label: format!("[{x}] x sigma"),
        route_a: got.to_string(),
        route_b: expected.to_string(),
        equal: got == expected,
        note: Some(format!("from {} through Jac at {:?}", trace.result, jacs)),
    })
}

pub use crate::families::GridCheck;

/// Whether the datum can shed a unitary block factor onto a smaller
/// packet member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primitivity {
    Yes,
    No,
    Unknown,
}

/// Searches the implemented factorisations only: a mirror pair of blocks
/// (a,b), (b,a) in the parameter peels off as a unitary block factor.
pub fn is_primitive_candidate(
    base: &SigmaBase,
    datum: &LanglandsDatum,
    packet: &PacketPair,
) -> Primitivity {
    if datum == &LanglandsDatum::sigma() {
        return Primitivity::Yes;
    }
    let blocks = packet.psi.blocks();
    for (i, x) in blocks.iter().enumerate() {
        let mirror = JordanBlock::new(x.line, x.b, x.a);
        let rest = packet.psi.without_block(x).and_then(|p| p.without_block(&mirror));
        if rest.is_some() && blocks.iter().skip(i + 1).any(|y| *y == mirror || (x.a == x.b && y == x)) {
            // ψ₀ ⊕ E ⊕ Ẽ shape: every constituent of u(a,b) ⋊ π₀ lies in
            // the bigger packet, so the member factors through a smaller one
            let _ = base;
            return Primitivity::No;
        }
    }
    Primitivity::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(h: i64) -> SigmaBase {
        SigmaBase::minimal(HalfInt::halves(h), Sign::Plus).unwrap()
    }

    #[test]
    fn critical_predicate() {
        let line = CuspLine::with_alpha("rho", HalfInt::int(2)).unwrap();
        let i = HalfInt::int;
        assert!(is_critical(&[i(1), i(2), i(2)], &line));
        assert!(!is_critical(&[i(3), i(4)], &line));
        let line0 = CuspLine::with_alpha("rho", HalfInt::ZERO).unwrap();
        assert!(is_critical(&[i(0), i(1)], &line0));
        assert!(!is_critical(&[i(1), i(2)], &line0));
    }

    #[test]
    fn catalog_counts() {
        let expect = |h: i64, counts: &[usize]| {
            let b = base(h);
            let cats = catalog(&b);
            let got: Vec<usize> = cats.iter().map(|c| c.labels.len()).collect();
            assert_eq!(got, counts, "alpha = {h}/2");
        };
        expect(0, &[5, 6, 6]);
        expect(1, &[8, 5]);
        expect(2, &[7]);
        expect(3, &[4, 4, 1, 8]);
        expect(4, &[4, 4, 1, 8]);
        expect(5, &[4, 4, 1, 8]);
        expect(6, &[4, 4, 1, 8]);
    }

    #[test]
    fn corank_two_above_one_verifies() {
        for h in [3, 4, 5, 6] {
            let b = base(h);
            let case = &catalog(&b)[0];
            let report = verify_case(&b, case);
            assert!(report.pass, "alpha {h}/2: {report:?}");
        }
    }

    #[test]
    fn descending_triple_verifies() {
        for h in [5, 6] {
            let b = base(h);
            let cats = catalog(&b);
            let case = cats.iter().find(|c| c.labels.len() == 8).unwrap();
            let report = verify_case(&b, case);
            assert!(report.pass, "alpha {h}/2: {report:?}");
        }
    }

    #[test]
    fn appendix_instances() {
        for (h, xs) in [(4, vec![0, 2]), (6, vec![0, 2, 4])] {
            let b = base(h);
            for x2 in xs {
                let check = appendix_lemma(&b, HalfInt::halves(x2)).unwrap();
                assert!(check.equal, "alpha {h}/2 x {x2}/2: {check:?}");
            }
        }
    }

    #[test]
    fn primitivity_tristate() {
        let b = base(0);
        let sigma_pair = PacketPair::new(b.psi.clone(), b.eps.clone()).unwrap();
        assert_eq!(
            is_primitive_candidate(&b, &LanglandsDatum::sigma(), &sigma_pair),
            Primitivity::Yes
        );
        // mirrored blocks factor off
        let line = b.line();
        let blk = JordanBlock::new(line, 3, 1);
        let mir = JordanBlock::new(line, 1, 3);
        let psi = b.psi.with_block(blk).with_block(mir);
        let eps = b.eps.clone().with(blk, Sign::Plus).with(mir, Sign::Plus);
        let pp = PacketPair::new(psi, eps).unwrap();
        let d = LanglandsDatum::new(
            [Segment::point(line, HalfInt::int(1))],
            TemperedSymbol::PMZeroChain { line, n: 1, sign: Sign::Plus },
        )
        .unwrap();
        assert_eq!(is_primitive_candidate(&b, &d, &pp), Primitivity::No);
        // an ordinary family pair stays undetermined
        let b5 = base(5);
        let pp5 = crate::families::packet_gt1(&b5, 3, 1).unwrap();
        let d5 = crate::families::family_datum(
            &b5,
            &crate::families::FamilyCase::RedGt1 { m: 3, n: 1 },
        )
        .unwrap();
        assert_eq!(is_primitive_candidate(&b5, &d5, &pp5), Primitivity::Unknown);
    }
}
