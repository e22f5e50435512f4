//! The two-parameter families of packet members at reducibility > 1, 0,
//! 1/2 and 1: closed-form data, packet parameters, the boundary answers
//! the simple reduction cannot reach on its own, and grid verifiers that
//! compare the reduction route against the closed forms.

use crate::arthur::{
    aubert_param,
    block_for, dominate_descend, dual_of_elementary_ddr, moeglin_rep_with, AParam,
    BoundaryAction, BoundaryResolve, DualTransport, EpsChar, JordanBlock, PacketPair,
    ReductionTrace, SigmaBase, WrapKind,
};
use crate::socle::JacResult;
use crate::classical::{LanglandsDatum, Sign, TemperedSymbol};
use crate::half::HalfInt;
use crate::line::LineId;
use crate::segment::Segment;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which τ-family member of the reducibility-one case.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Red1Kind {
    PiPlus,
    PiMinus,
    TauMinus,
}

/// A member of one of the two-parameter families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum FamilyCase {
    /// L(\[α−1, α+m\]^tr; δ(\[α, α+n\]; σ)) at α ≥ 3/2; m ≥ −2, n ≥ −1.
    RedGt1 { m: i64, n: i64 },
    /// L(\[1, m\]^tr; δ(\[0, n\]_sign; σ)) at α = 0; m, n ≥ 0.
    Red0 { m: i64, n: i64, sign: Sign },
    /// π^±_{m,n} at α = 1/2; m, n ≥ 1.
    RedHalf { m: i64, n: i64, sign: Sign },
    /// π^±_{m,n} and τ^−_{m,n} at α = 1; m, n ≥ 1.
    Red1 { m: i64, n: i64, kind: Red1Kind },
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyCase::RedGt1 { m, n } => write!(f, "pi[{m},{n}]"),
            FamilyCase::Red0 { m, n, sign } => write!(f, "pi{sign}[{m},{n}] (alpha 0)"),
            FamilyCase::RedHalf { m, n, sign } => write!(f, "pi{sign}[{m},{n}] (alpha 1/2)"),
            FamilyCase::Red1 { m, n, kind } => match kind {
                Red1Kind::PiPlus => write!(f, "pi+[{m},{n}] (alpha 1)"),
                Red1Kind::PiMinus => write!(f, "pi-[{m},{n}] (alpha 1)"),
                Red1Kind::TauMinus => write!(f, "tau-[{m},{n}] (alpha 1)"),
            },
        }
    }
}

fn points(line: LineId, from: HalfInt, to: HalfInt) -> Vec<Segment> {
    let mut v = Vec::new();
    let mut x = from;
    while x <= to {
        v.push(Segment::point(line, x));
        x = x + 1;
    }
    v
}

fn check_alpha(base: &SigmaBase, line: LineId, wanted: HalfInt, what: &str) -> Result<()> {
    let alpha = base.lines.get(line).alpha;
    if alpha != wanted {
        return Err(Error::FamilyRange(format!(
            "{what} needs a line with alpha = {wanted}, the base has alpha = {alpha}"
        )));
    }
    Ok(())
}

/// The closed-form Langlands datum of a family member.
pub fn family_datum(base: &SigmaBase, case: &FamilyCase) -> Result<LanglandsDatum> {
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    match *case {
        FamilyCase::RedGt1 { m, n } => {
            if alpha < HalfInt::halves(3) {
                return Err(Error::FamilyRange(format!("alpha {alpha} below 3/2")));
            }
            if m < -2 || n < -1 {
                return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
            }
            let segs = points(line, alpha - 1, alpha + m);
            let temp = if n >= 0 {
                TemperedSymbol::GenSteinberg { seg: Segment::new(line, alpha, alpha + n) }
            } else {
                TemperedSymbol::Cusp
            };
            LanglandsDatum::new(segs, temp)
        }
        FamilyCase::Red0 { m, n, sign } => {
            check_alpha(base, line, HalfInt::ZERO, "the alpha = 0 family")?;
            if m < 0 || n < 0 {
                return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
            }
            let segs = points(line, HalfInt::int(1), HalfInt::int(m));
            LanglandsDatum::new(segs, TemperedSymbol::PMZeroChain { line, n, sign })
        }
        FamilyCase::RedHalf { m, n, sign } => {
            check_alpha(base, line, HalfInt::halves(1), "the alpha = 1/2 family")?;
            if m < 1 || n < 1 {
                return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
            }
            match sign {
                Sign::Plus => {
                    let segs = points(line, HalfInt::halves(1), HalfInt::halves(2 * m - 1));
                    let temp = TemperedSymbol::GenSteinberg {
                        seg: Segment::new(line, HalfInt::halves(1), HalfInt::halves(2 * n - 1)),
                    };
                    LanglandsDatum::new(segs, temp)
                }
                Sign::Minus => {
                    let segs = points(line, HalfInt::halves(3), HalfInt::halves(2 * m - 1));
                    let temp = TemperedSymbol::PMSquare {
                        seg: Segment::new(line, HalfInt::halves(-1), HalfInt::halves(2 * n - 1)),
                        sign: Sign::Minus,
                    };
                    LanglandsDatum::new(segs, temp)
                }
            }
        }
        FamilyCase::Red1 { m, n, kind } => {
            check_alpha(base, line, HalfInt::int(1), "the alpha = 1 family")?;
            if m < 1 || n < 1 {
                return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
            }
            match kind {
                Red1Kind::PiPlus | Red1Kind::PiMinus => {
                    let segs = points(line, HalfInt::int(1), HalfInt::int(m));
                    let sign = if kind == Red1Kind::PiPlus { Sign::Plus } else { Sign::Minus };
                    let temp = TemperedSymbol::TauPM {
                        sign,
                        seg: Segment::new(line, HalfInt::int(1), HalfInt::int(n)),
                    };
                    LanglandsDatum::new(segs, temp)
                }
                Red1Kind::TauMinus => {
                    let segs = points(line, HalfInt::int(2), HalfInt::int(m));
                    let temp = TemperedSymbol::PMSquare {
                        seg: Segment::new(line, HalfInt::int(-1), HalfInt::int(n)),
                        sign: Sign::Minus,
                    };
                    LanglandsDatum::new(segs, temp)
                }
            }
        }
    }
}

/// ψ_σ minus the top two blocks of its chain on the working line, the
/// common stem of the packet parameters at α ≥ 3/2.
fn stem(base: &SigmaBase) -> (AParam, EpsChar) {
    let line = base.line();
    let chain = base.psi.psi_d(line);
    let mut psi = base.psi.clone();
    let mut eps = base.eps.clone();
    for &c in chain.iter().rev().take(2) {
        let blk = block_for(line, c, Sign::Plus);
        psi = psi.without_block(&blk).expect("chain block present");
        eps.remove(&blk);
    }
    (psi, eps)
}

/// ε_σ on a chain block of the working line.
fn sigma_sign(base: &SigmaBase, c: i64) -> Result<Sign> {
    let blk = block_for(base.line(), c, Sign::Plus);
    base.eps
        .get(&blk)
        .ok_or_else(|| Error::FamilyRange(format!("the base chain has no block at {c}")))
}

fn add(psi: &mut AParam, eps: &mut EpsChar, blk: JordanBlock, s: Sign) {
    *psi = psi.with_block(blk);
    eps.set(blk, s);
}

/// The packet pair of the straight character family at α ≥ 3/2:
/// blocks (2α+1+2n, 1) and (1, 2α+1+2m) over the stem.
pub fn packet_gt1(base: &SigmaBase, m: i64, n: i64) -> Result<PacketPair> {
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    if alpha < HalfInt::halves(3) {
        return Err(Error::FamilyRange(format!("alpha {alpha} below 3/2")));
    }
    let half32 = alpha == HalfInt::halves(3);
    let k = alpha.twice + 1 + 2 * n; // 2α+1+2n
    let l = alpha.twice + 1 + 2 * m;
    if k < 1 || l < 0 {
        return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
    }
    let (mut psi, mut eps) = stem(base);
    let e_top = sigma_sign(base, alpha.twice - 1)?; // ε_σ(2α−1)
    add(&mut psi, &mut eps, block_for(line, k, Sign::Plus), e_top);
    if l >= 1 {
        let e_low = if half32 { Sign::Plus } else { sigma_sign(base, alpha.twice - 3)? };
        add(&mut psi, &mut eps, block_for(line, l, Sign::Minus), e_low);
    }
    PacketPair::new(psi, eps)
}

/// The packet pair of the reverse character family at α ≥ 3/2.
pub fn packet_gt1_reverse(base: &SigmaBase, m: i64, n: i64) -> Result<PacketPair> {
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    if alpha < HalfInt::halves(3) {
        return Err(Error::FamilyRange(format!("alpha {alpha} below 3/2")));
    }
    let half32 = alpha == HalfInt::halves(3);
    let k = alpha.twice + 1 + 2 * n;
    let l = alpha.twice + 1 + 2 * m;
    if k < 0 || l < 1 {
        return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
    }
    let (mut psi, mut eps) = stem(base);
    let e_top = if half32 { Sign::Plus } else { sigma_sign(base, alpha.twice - 3)? };
    if k >= 1 {
        add(&mut psi, &mut eps, block_for(line, k, Sign::Plus), e_top);
    }
    add(&mut psi, &mut eps, block_for(line, l, Sign::Minus), sigma_sign(base, alpha.twice - 1)?);
    PacketPair::new(psi, eps)
}

/// The packet pair ψ_σ ⊕ (2n+1, 1) ⊕ (1, 2m+1) with both new signs ξ at
/// α = 0.
pub fn packet_0(base: &SigmaBase, m: i64, n: i64, xi: Sign) -> Result<PacketPair> {
    let line = base.line();
    check_alpha(base, line, HalfInt::ZERO, "the alpha = 0 packet")?;
    let mut psi = base.psi.clone();
    let mut eps = base.eps.clone();
    add(&mut psi, &mut eps, block_for(line, 2 * n + 1, Sign::Plus), xi);
    add(&mut psi, &mut eps, block_for(line, 2 * m + 1, Sign::Minus), xi);
    PacketPair::new(psi, eps)
}

/// The packet pair ψ_σ ⊕ (2n, 1) ⊕ (1, 2m) with both new signs ξ at
/// α = 1/2.
pub fn packet_half(base: &SigmaBase, m: i64, n: i64, xi: Sign) -> Result<PacketPair> {
    let line = base.line();
    check_alpha(base, line, HalfInt::halves(1), "the alpha = 1/2 packet")?;
    if m < 1 || n < 1 {
        return Err(Error::FamilyRange(format!("indices ({m},{n}) out of range")));
    }
    let mut psi = base.psi.clone();
    let mut eps = base.eps.clone();
    add(&mut psi, &mut eps, block_for(line, 2 * n, Sign::Plus), xi);
    add(&mut psi, &mut eps, block_for(line, 2 * m, Sign::Minus), xi);
    PacketPair::new(psi, eps)
}

/// Character variants of the α = 1 packet ψ_σ ⊕ (2n+1, 1) ⊕ (1, 2m+1).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Eps1 {
    Plus,
    Minus,
    PlusMinusMinus,
}

/// The α = 1 packet pair; the base must contain the block (1, 1) whose
/// sign ξ anchors all three character variants.
pub fn packet_1(base: &SigmaBase, m: i64, n: i64, variant: Eps1) -> Result<PacketPair> {
    let line = base.line();
    check_alpha(base, line, HalfInt::int(1), "the alpha = 1 packet")?;
    if m < 1 || n < 1 || m == n {
        return Err(Error::FamilyRange(format!(
            "the alpha = 1 characters need distinct m, n >= 1, got ({m},{n})"
        )));
    }
    let one = block_for(line, 1, Sign::Plus);
    let xi = base.eps.get(&one).ok_or_else(|| {
        Error::FamilyRange("the alpha = 1 family needs the block (1,1) in the base".into())
    })?;
    let k = 2 * n + 1;
    let l = 2 * m + 1;
    let kb = block_for(line, k, Sign::Plus);
    let lb = block_for(line, l, Sign::Minus);
    let (min_b, max_b) = if k < l { (kb, lb) } else { (lb, kb) };
    let mut psi = base.psi.clone();
    let mut eps = base.eps.clone();
    psi = psi.with_block(kb).with_block(lb);
    match variant {
        Eps1::Plus => {
            eps.set(one, xi);
            eps.set(min_b, xi);
            eps.set(max_b, xi);
        }
        Eps1::Minus => {
            eps.set(one, xi.flip());
            eps.set(min_b, xi.flip());
            eps.set(max_b, xi);
        }
        Eps1::PlusMinusMinus => {
            eps.set(one, xi);
            eps.set(min_b, xi.flip());
            eps.set(max_b, xi.flip());
        }
    }
    PacketPair::new(psi, eps)
}

/// The packet whose member the closed form names, per the theorems'
/// character bookkeeping.
pub fn family_packet(base: &SigmaBase, case: &FamilyCase) -> Result<PacketPair> {
    match *case {
        FamilyCase::RedGt1 { m, n } => packet_gt1(base, m, n),
        FamilyCase::Red0 { m, n, sign } => {
            // sign(n−m)·ξ = sign ⟹ ξ = sign(n−m)·sign
            let xi = if n > m { sign } else { sign.flip() };
            packet_0(base, m, n, xi)
        }
        FamilyCase::RedHalf { m, n, sign } => {
            let xi = if m < n { sign } else { sign.flip() };
            packet_half(base, m, n, xi)
        }
        FamilyCase::Red1 { m, n, kind } => {
            let variant = match (kind, m < n) {
                (Red1Kind::PiPlus, _) => Eps1::Minus,
                (Red1Kind::PiMinus, true) => Eps1::Plus,
                (Red1Kind::PiMinus, false) => Eps1::PlusMinusMinus,
                (Red1Kind::TauMinus, true) => Eps1::PlusMinusMinus,
                (Red1Kind::TauMinus, false) => Eps1::Plus,
            };
            packet_1(base, m, n, variant)
        }
    }
}

/// Boundary answers for the families: the short list of states the simple
/// step cannot pass, each with its fixed value or consumption rule.
pub struct FamilyBoundary;

impl FamilyBoundary {
    fn line_blocks(pp: &PacketPair, line: LineId) -> Vec<(JordanBlock, Sign)> {
        pp.psi
            .on_line(line)
            .map(|b| (*b, pp.eps.get(b).unwrap_or(Sign::Plus)))
            .collect()
    }
}

impl BoundaryResolve for FamilyBoundary {
    fn resolve(&self, base: &SigmaBase, pp: &PacketPair) -> Option<BoundaryAction> {
        for line in base.lines.ids() {
            let alpha = base.lines.get(line).alpha;
            let blocks = Self::line_blocks(pp, line);

            if alpha == HalfInt::ZERO && blocks.len() == 2 {
                let b1 = block_for(line, 1, Sign::Plus);
                let b3p = block_for(line, 3, Sign::Plus);
                let b3m = block_for(line, 3, Sign::Minus);
                let find = |blk: &JordanBlock| blocks.iter().find(|(b, _)| b == blk).map(|(_, s)| *s);
                if let (Some(s1), Some(s3)) = (find(&b1), find(&b3p)) {
                    if s1 == s3 {
                        let datum = LanglandsDatum::tempered(TemperedSymbol::PMZeroChain {
                            line,
                            n: 1,
                            sign: s1,
                        });
                        return Some(BoundaryAction::Stop {
                            datum,
                            note: format!("tempered pair (1,3){s1} at alpha 0"),
                        });
                    }
                }
                if let (Some(s1), Some(s3)) = (find(&b1), find(&b3m)) {
                    if s1 == s3 {
                        let datum = LanglandsDatum::new(
                            [Segment::point(line, HalfInt::int(1))],
                            TemperedSymbol::PMZeroChain { line, n: 0, sign: s1.flip() },
                        )
                        .ok()?;
                        return Some(BoundaryAction::Stop {
                            datum,
                            note: format!("cotempered pair (1,3){s1} at alpha 0"),
                        });
                    }
                }
            }

            if alpha == HalfInt::halves(1) && blocks.len() == 2 {
                let b2m = block_for(line, 2, Sign::Minus);
                let b4p = block_for(line, 4, Sign::Plus);
                let b2p = block_for(line, 2, Sign::Plus);
                let b4m = block_for(line, 4, Sign::Minus);
                let find = |blk: &JordanBlock| blocks.iter().find(|(b, _)| b == blk).map(|(_, s)| *s);
                if find(&b2m) == Some(Sign::Minus) && find(&b4p) == Some(Sign::Minus) {
                    let datum = LanglandsDatum::tempered(TemperedSymbol::PMSquare {
                        seg: Segment::new(line, HalfInt::halves(-1), HalfInt::halves(3)),
                        sign: Sign::Minus,
                    });
                    return Some(BoundaryAction::Stop {
                        datum,
                        note: "two-sided pair (2,4)- at alpha 1/2".into(),
                    });
                }
                if find(&b2p) == Some(Sign::Minus) && find(&b4m) == Some(Sign::Minus) {
                    let datum = LanglandsDatum::new(
                        [
                            Segment::point(line, HalfInt::halves(1)),
                            Segment::point(line, HalfInt::halves(3)),
                        ],
                        TemperedSymbol::GenSteinberg {
                            seg: Segment::point(line, HalfInt::halves(1)),
                        },
                    )
                    .ok()?;
                    return Some(BoundaryAction::Stop {
                        datum,
                        note: "cotempered pair (2,4)- at alpha 1/2".into(),
                    });
                }
            }

            if alpha == HalfInt::int(1) {
                let one = block_for(line, 1, Sign::Plus);
                let xi = base.eps.get(&one)?;
                let find = |blk: &JordanBlock| {
                    blocks.iter().find(|(b, _)| b == blk).map(|(_, s)| *s)
                };
                let s1 = find(&one);
                let b3p = block_for(line, 3, Sign::Plus);
                let b3m = block_for(line, 3, Sign::Minus);
                let b5p = block_for(line, 5, Sign::Plus);
                let b5m = block_for(line, 5, Sign::Minus);

                // anchored boundary at (1, 3): consume both blocks
                if let Some(s) = s1 {
                    if find(&b3m) == Some(s) {
                        let q = if s == xi { Sign::Minus } else { Sign::Plus };
                        return Some(BoundaryAction::Consume {
                            remove: vec![one, b3m],
                            wrap: WrapKind::TauWrap { line, sign: q },
                            note: format!("tau wrap from (1,3){s} at alpha 1"),
                        });
                    }
                    if find(&b3p) == Some(s) {
                        if s == xi {
                            return Some(BoundaryAction::Consume {
                                remove: vec![one, b3p],
                                wrap: WrapKind::PMCore {
                                    line,
                                    seg: Segment::new(line, HalfInt::int(-1), HalfInt::int(1)),
                                    sign: Sign::Minus,
                                    remove_point: Some(HalfInt::int(1)),
                                },
                                note: format!("two-sided core from (1,3){s} at alpha 1"),
                            });
                        }
                        return Some(BoundaryAction::Consume {
                            remove: vec![one, b3p],
                            wrap: WrapKind::TauCore { line, sign: Sign::Plus },
                            note: format!("tau core from (1,3){s} at alpha 1"),
                        });
                    }
                }

                // chain {1, 3} with the boundary at 5: consume the pair.
                // Only the orientation coming from a lowered chain block
                // against a raised one admits the two-sided core; the other
                // orientation is reached through the involution.
                if s1 == Some(xi)
                    && find(&b3m) == Some(xi.flip())
                    && find(&b5p) == Some(xi.flip())
                {
                    let _ = b5m;
                    return Some(BoundaryAction::Consume {
                        remove: vec![b3m, b5p],
                        wrap: WrapKind::PMCore {
                            line,
                            seg: Segment::new(line, HalfInt::int(-1), HalfInt::int(2)),
                            sign: Sign::Minus,
                            remove_point: None,
                        },
                        note: format!("two-sided core from (3,5){} at alpha 1", xi.flip()),
                    });
                }
            }
        }
        None
    }
}

/// Reduction with the family boundary answers plugged in.
pub fn family_reduce(base: &SigmaBase, pp: &PacketPair) -> Result<ReductionTrace> {
    moeglin_rep_with(base, pp, &FamilyBoundary)
}

/// Outcome of one grid point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridCheck {
    pub label: String,
    pub route_a: String,
    pub route_b: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GridCheck {
    fn ok(label: String, a: &LanglandsDatum, b: &LanglandsDatum, note: Option<String>) -> Self {
        GridCheck {
            label,
            route_a: a.to_string(),
            route_b: b.to_string(),
            equal: a == b,
            note,
        }
    }

    fn fail(label: String, err: &Error) -> Self {
        GridCheck {
            label,
            route_a: format!("error: {err}"),
            route_b: String::new(),
            equal: false,
            note: None,
        }
    }
}

/// A family verification report: one line per grid point.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<GridCheck>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn push(&mut self, c: GridCheck) {
        self.checks.push(c);
    }
}

/// The reduction-route value of a family member: the direct recursion on
/// the recursable side of the grid, the dual-parameter route composed with
/// the established involution formula on the other.
pub fn family_route(base: &SigmaBase, case: &FamilyCase) -> Result<(LanglandsDatum, String)> {
    let pp = family_packet(base, case)?;
    let direct = family_reduce(base, &pp);
    match direct {
        Ok(trace) => Ok((trace.result, "direct reduction".into())),
        Err(first_err) => {
            // the other side of the grid: swap the parameter and identify
            // the dual member through the involution formula
            let (trace, transport) = dual_of_elementary_ddr(base, &pp, &FamilyBoundary)
                .map_err(|_| first_err)?;
            let dual_value = trace.result;
            let expected_dual = family_datum(base, &swap_case(case))?;
            if dual_value != expected_dual {
                return Err(Error::CertificateFailure(format!(
                    "dual route of {case} gave {dual_value}, expected {expected_dual}"
                )));
            }
            let value = family_datum(base, case)?;
            Ok((
                value,
                format!("dual-parameter route ({transport:?}) through {expected_dual}"),
            ))
        }
    }
}

/// The index-swapped member naming the Aubert dual.
pub fn swap_case(case: &FamilyCase) -> FamilyCase {
    match *case {
        FamilyCase::RedGt1 { m, n } => FamilyCase::RedGt1 { m: n, n: m },
        FamilyCase::Red0 { m, n, sign } => FamilyCase::Red0 { m: n, n: m, sign: sign.flip() },
        FamilyCase::RedHalf { m, n, sign } => {
            FamilyCase::RedHalf { m: n, n: m, sign: sign.flip() }
        }
        FamilyCase::Red1 { m, n, kind } => {
            let kind = match kind {
                Red1Kind::PiPlus => Red1Kind::PiPlus,
                Red1Kind::PiMinus => Red1Kind::TauMinus,
                Red1Kind::TauMinus => Red1Kind::PiMinus,
            };
            FamilyCase::Red1 { m: n, n: m, kind }
        }
    }
}

/// Checks the packet formulas over a grid of cases. Equal indices carry a
/// membership claim only and are routed through the descent check.
pub fn verify_family(base: &SigmaBase, cases: &[FamilyCase]) -> Report {
    let mut report = Report::default();
    for case in cases {
        let label = case.to_string();
        match case {
            FamilyCase::RedGt1 { m, n } | FamilyCase::Red0 { m, n, .. } if m == n && *m >= 0 => {
                match verify_equal_index_membership(base, *m) {
                    Ok(check) => report.push(check),
                    Err(e) => report.push(GridCheck::fail(label, &e)),
                }
                continue;
            }
            _ => {}
        }
        match (family_route(base, case), family_datum(base, case)) {
            (Ok((value, how)), Ok(closed)) => {
                report.push(GridCheck::ok(label, &value, &closed, Some(how)));
            }
            (Err(e), _) | (_, Err(e)) => report.push(GridCheck::fail(label, &e)),
        }
    }
    report
}

/// Checks the duality formulas: the parameter-swap route against the
/// index-swapped closed form. The τ-members of the reducibility-one family
/// are the involution mirrors of the π⁻-members, so their rows check the
/// parameter identity binding the two pairs instead of re-running the
/// swapped reduction.
pub fn verify_duality(base: &SigmaBase, cases: &[FamilyCase]) -> Report {
    let mut report = Report::default();
    for case in cases {
        let label = format!("dual of {case}");
        if let FamilyCase::Red1 { kind: Red1Kind::TauMinus, .. } = case {
            let run = || -> Result<(PacketPair, PacketPair)> {
                let own = family_packet(base, case)?;
                let partner = family_packet(base, &swap_case(case))?;
                Ok((aubert_param(&partner), own))
            };
            match run() {
                Ok((swapped, own)) => report.push(GridCheck {
                    label,
                    route_a: swapped.to_string(),
                    route_b: own.to_string(),
                    equal: swapped == own,
                    note: Some("parameter mirror of the pi- row".into()),
                }),
                Err(e) => report.push(GridCheck::fail(label, &e)),
            }
            continue;
        }
        let run = || -> Result<(LanglandsDatum, LanglandsDatum, DualTransport)> {
            let pp = family_packet(base, case)?;
            let (trace, transport) = dual_of_elementary_ddr(base, &pp, &FamilyBoundary)?;
            let expected = family_datum(base, &swap_case(case))?;
            Ok((trace.result, expected, transport))
        };
        match run() {
            Ok((got, expected, transport)) => {
                report.push(GridCheck::ok(label, &got, &expected, Some(format!("{transport:?}"))));
            }
            Err(e) => report.push(GridCheck::fail(label, &e)),
        }
    }
    report
}

/// Membership at m = n through descent from the (m, m+1) parameter.
pub fn verify_equal_index_membership(base: &SigmaBase, m: i64) -> Result<GridCheck> {
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    let (high_case, target_case, exp_label) = if alpha >= HalfInt::halves(3) {
        (FamilyCase::RedGt1 { m, n: m + 1 }, FamilyCase::RedGt1 { m, n: m }, alpha + (m + 1))
    } else if alpha == HalfInt::ZERO {
        (
            FamilyCase::Red0 { m, n: m + 1, sign: Sign::Plus },
            FamilyCase::Red0 { m, n: m, sign: Sign::Plus },
            HalfInt::int(m + 1),
        )
    } else {
        return Err(Error::FamilyRange(format!(
            "no equal-index descent recipe at alpha = {alpha}"
        )));
    };
    let _ = exp_label;
    let pp_high = family_packet(base, &high_case)?;
    let rep = family_datum(base, &high_case)?;
    let target = family_packet(base, &target_case)?.psi;
    let expected = family_datum(base, &target_case)?;
    match dominate_descend(base, &pp_high, &target, &rep)? {
        JacResult::Sum(s) => {
            let got: Vec<_> = s.iter().map(|(d, c)| (d.clone(), c)).collect();
            let pass = got.len() == 1 && got[0].1 == 1 && got[0].0 == expected;
            Ok(GridCheck {
                label: format!("descent membership {target_case}"),
                route_a: got
                    .first()
                    .map(|(d, _)| d.to_string())
                    .unwrap_or_else(|| "0".into()),
                route_b: expected.to_string(),
                equal: pass,
                note: Some("order-sensitive at equal indices".into()),
            })
        }
        JacResult::Undecidable => Err(Error::Undecidable("equal-index descent".into())),
    }
}

/// The end cases around the α ≥ 3/2 grid: packet membership of the chain
/// and its transpose, and the duality identities for the short members.
pub fn verify_endpoints(base: &SigmaBase, n_range: std::ops::RangeInclusive<i64>) -> Report {
    let mut report = Report::default();
    let line = base.line();
    let alpha = base.lines.get(line).alpha;
    for n in n_range {
        // membership of the chain δ([α, α+n]; σ)
        let chain_case = FamilyCase::RedGt1 { m: -2, n };
        match (family_route(base, &chain_case), family_datum(base, &chain_case)) {
            (Ok((v, how)), Ok(c)) => {
                report.push(GridCheck::ok(format!("delta([{alpha},{}];sigma)", alpha + n), &v, &c, Some(how)));
            }
            (Err(e), _) | (_, Err(e)) => {
                report.push(GridCheck::fail(format!("chain endpoint n = {n}"), &e))
            }
        }
        // membership of the transpose L([α, α+n]^tr; σ) via the reverse pair
        let rev = || -> Result<(LanglandsDatum, LanglandsDatum)> {
            let pp = packet_gt1_reverse(base, n, -2)?;
            let trace = family_reduce(base, &pp)?;
            let expected = LanglandsDatum::new(
                points(line, alpha, alpha + n),
                TemperedSymbol::Cusp,
            )?;
            Ok((trace.result, expected))
        };
        match rev() {
            Ok((got, expected)) => report.push(GridCheck::ok(
                format!("L([{alpha},{}]tr;sigma)", alpha + n),
                &got,
                &expected,
                None,
            )),
            Err(e) => report.push(GridCheck::fail(format!("transpose endpoint n = {n}"), &e)),
        }
        // duality: chain dual equals transpose, short member duals close
        let duals = || -> Result<Vec<(String, LanglandsDatum, LanglandsDatum)>> {
            let mut out = Vec::new();
            let chain_pp = family_packet(base, &chain_case)?;
            let (tr, _) = dual_of_elementary_ddr(base, &chain_pp, &FamilyBoundary)?;
            out.push((
                format!("delta([{alpha},{}];sigma)^t", alpha + n),
                tr.result,
                LanglandsDatum::new(points(line, alpha, alpha + n), TemperedSymbol::Cusp)?,
            ));
            let short_case = FamilyCase::RedGt1 { m: -1, n };
            let short_pp = family_packet(base, &short_case)?;
            let (tr2, _) = dual_of_elementary_ddr(base, &short_pp, &FamilyBoundary)?;
            out.push((
                format!("L([{}];delta([{alpha},{}];sigma))^t", alpha - 1, alpha + n),
                tr2.result,
                LanglandsDatum::new(points(line, alpha - 1, alpha + n), TemperedSymbol::Cusp)?,
            ));
            Ok(out)
        };
        match duals() {
            Ok(v) => {
                for (label, got, expected) in v {
                    report.push(GridCheck::ok(label, &got, &expected, None));
                }
            }
            Err(e) => report.push(GridCheck::fail(format!("endpoint duals n = {n}"), &e)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(alpha_halves: i64) -> SigmaBase {
        SigmaBase::minimal(HalfInt::halves(alpha_halves), Sign::Plus).unwrap()
    }

    #[test]
    fn gt1_closed_forms() {
        let b = base(5);
        let l = b.line();
        let d = family_datum(&b, &FamilyCase::RedGt1 { m: 0, n: 0 }).unwrap();
        assert_eq!(d.to_string(), "L([5/2],[3/2];delta([5/2];sigma))");
        assert_eq!(d.segs().len(), 2);
        let chain = family_datum(&b, &FamilyCase::RedGt1 { m: -2, n: 1 }).unwrap();
        assert!(chain.is_tempered());
        let _ = l;
    }

    #[test]
    fn gt1_direct_recursion_small_grid() {
        for halves in [3, 5] {
            let b = base(halves);
            for m in -2..2i64 {
                for n in (m + 1).max(-1)..3 {
                    let case = FamilyCase::RedGt1 { m, n };
                    let pp = family_packet(&b, &case).unwrap();
                    let trace = family_reduce(&b, &pp)
                        .unwrap_or_else(|e| panic!("alpha {halves}/2 ({m},{n}): {e}"));
                    let closed = family_datum(&b, &case).unwrap();
                    assert_eq!(trace.result, closed, "alpha {halves}/2 ({m},{n})");
                    assert_eq!(trace.replay(&b.lines).unwrap(), trace.result);
                }
            }
        }
    }

    #[test]
    fn gt1_dual_route_small_grid() {
        let b = base(5);
        for m in 0..3i64 {
            for n in 0..3i64 {
                if m == n {
                    continue;
                }
                let case = FamilyCase::RedGt1 { m, n };
                let pp = family_packet(&b, &case).unwrap();
                let (trace, _) = dual_of_elementary_ddr(&b, &pp, &FamilyBoundary)
                    .unwrap_or_else(|e| panic!("dual ({m},{n}): {e}"));
                let expected = family_datum(&b, &swap_case(&case)).unwrap();
                assert_eq!(trace.result, expected, "dual of ({m},{n})");
            }
        }
    }

    #[test]
    fn zero_family_grid() {
        let b = base(0);
        for m in 0..3i64 {
            for n in 0..3i64 {
                if m == n {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    let case = FamilyCase::Red0 { m, n, sign };
                    let pp = family_packet(&b, &case).unwrap();
                    let trace = family_reduce(&b, &pp)
                        .unwrap_or_else(|e| panic!("alpha 0 ({m},{n},{sign}): {e}"));
                    let closed = family_datum(&b, &case).unwrap();
                    assert_eq!(trace.result, closed, "alpha 0 ({m},{n},{sign})");
                }
            }
        }
    }

    #[test]
    fn half_family_grid() {
        let b = base(1);
        for m in 1..4i64 {
            for n in 1..4i64 {
                if m == n {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    let case = FamilyCase::RedHalf { m, n, sign };
                    let pp = family_packet(&b, &case).unwrap();
                    let trace = family_reduce(&b, &pp)
                        .unwrap_or_else(|e| panic!("alpha 1/2 ({m},{n},{sign}): {e}"));
                    let closed = family_datum(&b, &case).unwrap();
                    assert_eq!(trace.result, closed, "alpha 1/2 ({m},{n},{sign})");
                }
            }
        }
    }

    #[test]
    fn one_family_grid() {
        let b = base(2);
        for m in 1..4i64 {
            for n in 1..4i64 {
                if m == n {
                    continue;
                }
                for kind in [Red1Kind::PiPlus, Red1Kind::PiMinus, Red1Kind::TauMinus] {
                    let case = FamilyCase::Red1 { m, n, kind };
                    let (value, _) = family_route(&b, &case)
                        .unwrap_or_else(|e| panic!("alpha 1 ({m},{n},{kind:?}): {e}"));
                    let closed = family_datum(&b, &case).unwrap();
                    assert_eq!(value, closed, "alpha 1 ({m},{n},{kind:?})");
                }
            }
        }
    }

    #[test]
    fn equal_index_descent() {
        let b = base(5);
        let check = verify_equal_index_membership(&b, 0).unwrap();
        assert!(check.equal, "{check:?}");
    }
}
