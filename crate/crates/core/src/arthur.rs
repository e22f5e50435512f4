//! Jordan-block parameters with component-group characters, the reduction
//! recursion that resolves a pair (ψ, ε) into a Langlands datum over σ,
//! duality on parameters, and domination descent.

use crate::classical::{LanglandsDatum, Sign, TemperedSymbol};
use crate::half::HalfInt;
use crate::line::{LineId, Lines, Parity};
use crate::segment::Segment;
use crate::socle::{self, JacResult, SocleCertificate};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// One Jordan block (ρ, a, b). `zeta_plus` only matters when a = b.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct JordanBlock {
    pub line: LineId,
    pub a: i64,
    pub b: i64,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub zeta_plus: bool,
}

fn default_true() -> bool {
    true
}

#[allow(clippy::trivially_copy_pass_by_ref)]
fn is_true(v: &bool) -> bool {
    *v
}

impl JordanBlock {
    pub fn new(line: LineId, a: i64, b: i64) -> Self {
        assert!(a >= 1 && b >= 1, "block sizes must be positive");
        JordanBlock { line, a, b, zeta_plus: true }
    }

    /// Twice the coordinate A = (a+b)/2 − 1.
    pub fn twice_upper(&self) -> i64 {
        self.a + self.b - 2
    }

    /// Twice the coordinate B = |a−b|/2.
    pub fn twice_lower(&self) -> i64 {
        (self.a - self.b).abs()
    }

    pub fn zeta(&self) -> Sign {
        if self.a > self.b {
            Sign::Plus
        } else if self.a < self.b {
            Sign::Minus
        } else if self.zeta_plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.a == 1 || self.b == 1
    }

    /// Elementary coordinates (c, δ_c); δ₁ = +1 by convention.
    pub fn elementary_coords(&self) -> Option<(i64, Sign)> {
        if !self.is_elementary() {
            return None;
        }
        let c = self.a.max(self.b);
        let delta = if c == 1 || self.b == 1 { Sign::Plus } else { Sign::Minus };
        Some((c, delta))
    }

    /// Block sizes of the diagonal restriction: 2j+1 for j ∈ \[B, A\].
    pub fn diag_sizes(&self) -> Vec<i64> {
        let lo = self.twice_lower() + 1;
        let hi = self.twice_upper() + 1;
        (lo..=hi).step_by(2).collect()
    }

    pub fn weight(&self) -> i64 {
        self.a * self.b
    }

    pub fn swapped(&self) -> JordanBlock {
        // a = b blocks are their own swap; the ζ choice stays a labelling
        // convention and does not travel
        JordanBlock { line: self.line, a: self.b, b: self.a, zeta_plus: self.zeta_plus }
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A parameter: a canonical multiset of Jordan blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct AParam {
    blocks: Vec<JordanBlock>,
}

impl AParam {
    pub fn new(blocks: impl IntoIterator<Item = JordanBlock>) -> Self {
        let mut v: Vec<JordanBlock> = blocks.into_iter().collect();
        v.sort();
        AParam { blocks: v }
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn on_line(&self, line: LineId) -> impl Iterator<Item = &JordanBlock> {
        self.blocks.iter().filter(move |b| b.line == line)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, b: &JordanBlock) -> bool {
        self.blocks.contains(b)
    }

    pub fn with_block(&self, b: JordanBlock) -> AParam {
        let mut v = self.blocks.clone();
        v.push(b);
        v.sort();
        AParam { blocks: v }
    }

    pub fn without_block(&self, b: &JordanBlock) -> Option<AParam> {
        let pos = self.blocks.iter().position(|x| x == b)?;
        let mut v = self.blocks.clone();
        v.remove(pos);
        Some(AParam { blocks: v })
    }

    /// Weight Σ a·b restricted to a line.
    pub fn line_weight(&self, line: LineId) -> i64 {
        self.on_line(line).map(|b| b.weight()).sum()
    }

    /// Σ n_ρ·a·b over all lines carrying a dimension hint; `None` when
    /// some line leaves the dimension implicit.
    pub fn weighted_weight(&self, lines: &Lines) -> Option<i64> {
        let mut total = 0;
        for blk in &self.blocks {
            let dim = lines.get(blk.line).dim_hint? as i64;
            total += dim * blk.weight();
        }
        Some(total)
    }

    pub fn is_elementary(&self) -> bool {
        self.blocks.iter().all(|b| b.is_elementary())
    }

    /// Diagonal restriction per line: the multiset of odd block sizes 2j+1.
    pub fn psi_d(&self, line: LineId) -> Vec<i64> {
        let mut v: Vec<i64> = self.on_line(line).flat_map(|b| b.diag_sizes()).collect();
        v.sort();
        v
    }

    /// Discrete diagonal restriction: ψ_d multiplicity free on every line.
    pub fn is_ddr(&self, lines: &Lines) -> bool {
        for line in lines.ids() {
            let d = self.psi_d(line);
            if d.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Good parity per line: a + b ≡ 2α (mod 2).
    pub fn good_parity(&self, lines: &Lines) -> bool {
        self.blocks.iter().all(|b| {
            let alpha = lines.get(b.line).alpha;
            (b.a + b.b - alpha.twice) % 2 == 0
        })
    }

    /// Speh labels u(a, b) of the attached general linear representation.
    pub fn attach_gl_rep(&self) -> Vec<(LineId, i64, i64)> {
        self.blocks.iter().map(|b| (b.line, b.a, b.b)).collect()
    }
}

impl fmt::Display for AParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// A ±1 function on the distinct block values of a parameter. Serialised
/// as an array of (block, sign) pairs parallel to the block list.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(JordanBlock, Sign)>", into = "Vec<(JordanBlock, Sign)>")]
pub struct EpsChar {
    values: BTreeMap<JordanBlock, Sign>,
}

impl From<Vec<(JordanBlock, Sign)>> for EpsChar {
    fn from(v: Vec<(JordanBlock, Sign)>) -> Self {
        EpsChar { values: v.into_iter().collect() }
    }
}

impl From<EpsChar> for Vec<(JordanBlock, Sign)> {
    fn from(e: EpsChar) -> Self {
        e.values.into_iter().collect()
    }
}

impl EpsChar {
    pub fn new() -> Self {
        EpsChar { values: BTreeMap::new() }
    }

    pub fn set(&mut self, block: JordanBlock, sign: Sign) {
        self.values.insert(block, sign);
    }

    pub fn with(mut self, block: JordanBlock, sign: Sign) -> Self {
        self.set(block, sign);
        self
    }

    pub fn get(&self, block: &JordanBlock) -> Option<Sign> {
        self.values.get(block).copied()
    }

    pub fn remove(&mut self, block: &JordanBlock) {
        self.values.remove(block);
    }

    /// Defined exactly on the parameter's distinct blocks.
    pub fn matches(&self, psi: &AParam) -> bool {
        let mut distinct: Vec<&JordanBlock> = psi.blocks().iter().collect();
        distinct.dedup();
        distinct.len() == self.values.len()
            && distinct.into_iter().all(|b| self.values.contains_key(b))
    }

    /// Product of ε over the multiset of blocks.
    pub fn product(&self, psi: &AParam) -> i64 {
        psi.blocks().iter().map(|b| self.get(b).map(Sign::val).unwrap_or(1)).product()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&JordanBlock, Sign)> {
        self.values.iter().map(|(b, s)| (b, *s))
    }
}

/// (ψ, ε) with ε defined on ψ's blocks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PacketPair {
    pub psi: AParam,
    pub eps: EpsChar,
}

impl PacketPair {
    pub fn new(psi: AParam, eps: EpsChar) -> Result<Self> {
        if !eps.matches(&psi) {
            return Err(Error::InvalidEps(format!(
                "character not defined exactly on the blocks of {psi}"
            )));
        }
        Ok(PacketPair { psi, eps })
    }

    /// ε on the diagonal restriction of a line: pairs (c, sign), sorted.
    pub fn eps_on_diag(&self, line: LineId) -> Vec<(i64, Sign)> {
        let mut v: Vec<(i64, Sign)> = self
            .psi
            .on_line(line)
            .filter_map(|b| {
                let (c, _) = b.elementary_coords()?;
                Some((c, self.eps.get(b).unwrap_or(Sign::Plus)))
            })
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for PacketPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.psi.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let s = self.eps.get(b).map(|s| s.to_string()).unwrap_or_default();
            write!(f, "{b}{s}")?;
        }
        write!(f, ")")
    }
}

/// The cuspidal base σ: its lines, tempered elementary parameter and
/// character.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaBase {
    pub lines: Lines,
    pub psi: AParam,
    pub eps: EpsChar,
    /// Set when the ε-product-one constraint was knowingly waived.
    pub product_override: bool,
}

impl SigmaBase {
    /// The minimal base forced by a single line at the given α: the full
    /// alternating chain up to 2α−1. `anchor` picks the free sign of the
    /// lowest odd block.
    pub fn minimal(alpha: HalfInt, anchor: Sign) -> Result<SigmaBase> {
        let (lines, line) = Lines::single("rho", alpha);
        let mut psi = AParam::default();
        let mut eps = EpsChar::new();
        if alpha >= HalfInt::int(1) {
            let top = alpha.twice - 1; // 2α−1
            let start = if top % 2 == 1 { 1 } else { 2 };
            let mut sign = if start == 2 {
                Sign::Minus
            } else {
                anchor
            };
            let mut c = start;
            while c <= top {
                let b = JordanBlock::new(line, c, 1);
                psi = psi.with_block(b);
                eps.set(b, sign);
                sign = sign.flip();
                c += 2;
            }
        }
        let product_override = eps.product(&psi) != 1;
        let base = SigmaBase { lines, psi, eps, product_override };
        base.validate()?;
        Ok(base)
    }

    pub fn line(&self) -> LineId {
        LineId(0)
    }

    pub fn validate(&self) -> Result<()> {
        self.lines.validate()?;
        if !self.psi.is_elementary() || self.psi.blocks().iter().any(|b| b.b != 1) {
            return Err(Error::Config("base parameter must be tempered elementary".into()));
        }
        if !self.psi.good_parity(&self.lines) {
            return Err(Error::Config("base parameter has bad parity".into()));
        }
        for line in self.lines.ids() {
            let alpha = self.lines.get(line).alpha;
            let diag = self.psi.psi_d(line);
            if alpha >= HalfInt::int(1) {
                let top = diag.last().copied().unwrap_or(0);
                if top != alpha.twice - 1 {
                    return Err(Error::Config(format!(
                        "line alpha {alpha} needs a chain topped at {}, found {top}",
                        alpha.twice - 1
                    )));
                }
            } else if !diag.is_empty() {
                return Err(Error::Config(format!(
                    "line alpha {alpha} < 1 admits no blocks, found {diag:?}"
                )));
            }
            // the character must be cuspidal on the whole chain
            let pp = PacketPair::new(self.psi.clone(), self.eps.clone())?;
            let inv = b_a_invariants(self, &pp, line)?;
            if inv.a.is_some() {
                return Err(Error::Config(format!(
                    "base character is not cuspidal on line {line:?}: a = {:?}",
                    inv.a
                )));
            }
        }
        Ok(())
    }
}

/// The threshold invariants of a line: the cuspidal bound b, the next block a
/// (None encodes ∞) and its sign, and the boundary flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineInvariants {
    pub b: i64,
    pub a: Option<i64>,
    pub delta_a: Sign,
    pub boundary: bool,
}

/// Computes b, a and the boundary flag for an elementary pair on a line.
pub fn b_a_invariants(
    base: &SigmaBase,
    pp: &PacketPair,
    line: LineId,
) -> Result<LineInvariants> {
    let mut cs: Vec<(i64, Sign, Sign)> = Vec::new(); // (c, delta, eps)
    for blk in pp.psi.on_line(line) {
        let (c, delta) = blk
            .elementary_coords()
            .ok_or_else(|| Error::InvalidParam(format!("block {blk} not elementary")))?;
        cs.push((c, delta, self_eps(pp, blk)?));
    }
    cs.sort();

    let fallback = match base.lines.get(line).parity {
        Parity::Odd => -1,
        Parity::Even => 0,
    };

    // longest cuspidal prefix: anchored at 1 or 2, gaps of 2, alternating
    // signs, ε(2) = −1 when anchored at 2
    let mut b = fallback;
    let mut prev: Option<(i64, Sign)> = None;
    for &(c, _delta, eps) in &cs {
        match prev {
            None => {
                let ok = (c == 1) || (c == 2 && eps == Sign::Minus);
                if !ok {
                    break;
                }
                b = c;
                prev = Some((c, eps));
            }
            Some((pc, pe)) => {
                if c == pc + 2 && eps == pe.flip() {
                    b = c;
                    prev = Some((c, eps));
                } else {
                    break;
                }
            }
        }
    }

    let next = cs.iter().find(|&&(c, _, _)| c > b);
    match next {
        None => Ok(LineInvariants { b, a: None, delta_a: Sign::Plus, boundary: false }),
        Some(&(c, delta, _)) => {
            if cs.iter().filter(|&&(c2, _, _)| c2 == c).count() > 1 {
                return Err(Error::InvalidParam(format!(
                    "two blocks share c = {c} on the line; the next block is ambiguous"
                )));
            }
            Ok(LineInvariants { b, a: Some(c), delta_a: delta, boundary: c == b + 2 && b > 0 })
        }
    }
}

fn self_eps(pp: &PacketPair, blk: &JordanBlock) -> Result<Sign> {
    pp.eps
        .get(blk)
        .ok_or_else(|| Error::InvalidEps(format!("character undefined on {blk}")))
}

/// Replaces a block by another of matching parities, transporting ε.
pub fn deform(pp: &PacketPair, from: JordanBlock, to: JordanBlock) -> Result<PacketPair> {
    if (from.a - to.a) % 2 != 0 || (from.b - to.b) % 2 != 0 {
        return Err(Error::DeformParity { a: from.a, b: from.b, a2: to.a, b2: to.b });
    }
    if !pp.psi.contains(&from) {
        return Err(Error::BlockMissing { a: from.a, b: from.b });
    }
    if pp.psi.contains(&to) {
        return Err(Error::DeformCollision { a: to.a, b: to.b });
    }
    let sign = self_eps(pp, &from)?;
    let psi = pp.psi.without_block(&from).unwrap().with_block(to);
    let mut eps = pp.eps.clone();
    if !psi.contains(&from) {
        eps.remove(&from);
    }
    eps.set(to, sign);
    PacketPair::new(psi, eps)
}

/// One simple reduction step on a line: lowers the block at a by two, or
/// deletes it at a = 2. Applicable iff a > b + 2 or b = 0.
pub fn reduce_step(
    base: &SigmaBase,
    pp: &PacketPair,
    line: LineId,
) -> Result<(HalfInt, PacketPair)> {
    let inv = b_a_invariants(base, pp, line)?;
    let a = inv.a.ok_or_else(|| Error::NothingToReduce(format!("{line:?}")))?;
    if !(a > inv.b + 2 || inv.b == 0) {
        return Err(Error::BoundaryCase { line: format!("{line:?}"), b: inv.b });
    }
    let exponent = HalfInt::halves(inv.delta_a.val() * (a - 1));
    let from = block_for(line, a, inv.delta_a);
    let next = if a > 2 {
        deform(pp, from, block_for(line, a - 2, inv.delta_a))?
    } else {
        let sign = self_eps(pp, &from)?;
        let _ = sign;
        let psi = pp
            .psi
            .without_block(&from)
            .ok_or(Error::BlockMissing { a: from.a, b: from.b })?;
        let mut eps = pp.eps.clone();
        if !psi.contains(&from) {
            eps.remove(&from);
        }
        PacketPair::new(psi, eps)?
    };
    Ok((exponent, next))
}

/// The elementary block with coordinates (c, δ).
pub fn block_for(line: LineId, c: i64, delta: Sign) -> JordanBlock {
    if c == 1 {
        JordanBlock::new(line, 1, 1)
    } else {
        match delta {
            Sign::Plus => JordanBlock::new(line, c, 1),
            Sign::Minus => JordanBlock::new(line, 1, c),
        }
    }
}

/// Swaps (a, b) in every block, transporting ε along the block bijection.
pub fn aubert_param(pp: &PacketPair) -> PacketPair {
    let psi = AParam::new(pp.psi.blocks().iter().map(|b| b.swapped()));
    let mut eps = EpsChar::new();
    for (b, s) in pp.eps.iter() {
        eps.set(b.swapped(), s);
    }
    PacketPair { psi, eps }
}

/// One recorded reduction step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionStep {
    pub line: LineId,
    pub exponent: HalfInt,
    pub before: (i64, i64),
    pub after: Option<(i64, i64)>,
    pub certificate: SocleCertificate,
}

/// Datum transformations attached to boundary consumptions. These are the
/// fixed answers of the boundary construction; the engine never derives
/// them, it replays and audits them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WrapKind {
    /// Steinberg inner chain \[1, j\] wraps to τ(\[0\]_sign; ·) and the datum
    /// gains the segment \[1\].
    TauWrap { line: LineId, sign: Sign },
    /// Cuspidal inner label becomes τ(\[0\]_sign; δ(\[1\]; σ)).
    TauCore { line: LineId, sign: Sign },
    /// Cuspidal inner label becomes the two-sided piece δ(seg_sign; σ),
    /// optionally consuming a one-point segment of the datum.
    PMCore { line: LineId, seg: Segment, sign: Sign, remove_point: Option<HalfInt> },
}

/// Applies a boundary wrap to the inner datum produced further down the
/// recursion.
pub fn apply_wrap(kind: &WrapKind, d: &LanglandsDatum) -> Result<LanglandsDatum> {
    match kind {
        WrapKind::TauWrap { line, sign } => {
            let TemperedSymbol::GenSteinberg { seg } = &d.temp else {
                return Err(Error::CertificateFailure(format!(
                    "tau wrap needs a Steinberg inner label, found {}",
                    d.temp
                )));
            };
            if seg.line != *line || seg.x != HalfInt::int(1) {
                return Err(Error::CertificateFailure(format!("tau wrap over {seg}")));
            }
            d.with_temp(TemperedSymbol::TauPM { sign: *sign, seg: *seg })
                .with_seg(Segment::point(*line, HalfInt::int(1)))
        }
        WrapKind::TauCore { line, sign } => {
            if d.temp != TemperedSymbol::Cusp {
                return Err(Error::CertificateFailure(format!(
                    "tau core needs a cuspidal inner label, found {}",
                    d.temp
                )));
            }
            Ok(d.with_temp(TemperedSymbol::TauPM {
                sign: *sign,
                seg: Segment::point(*line, HalfInt::int(1)),
            }))
        }
        WrapKind::PMCore { line: _, seg, sign, remove_point } => {
            if d.temp != TemperedSymbol::Cusp {
                return Err(Error::CertificateFailure(format!(
                    "square core needs a cuspidal inner label, found {}",
                    d.temp
                )));
            }
            let mut out = d.clone();
            if let Some(x) = remove_point {
                let pt = Segment::point(seg.line, *x);
                out = out.without_seg(&pt).ok_or_else(|| {
                    Error::CertificateFailure(format!("square core expects the segment [{x}]"))
                })?;
            }
            Ok(out.with_temp(TemperedSymbol::PMSquare { seg: *seg, sign: *sign }))
        }
    }
}

/// A step in the audited transcript.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TraceStep {
    Induce(ReductionStep),
    Boundary { kind: WrapKind, consumed: Vec<JordanBlock>, note: String },
}

/// The audited transcript of a reduction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub base_note: String,
    pub base_datum: LanglandsDatum,
    pub result: LanglandsDatum,
}

impl ReductionTrace {
    /// Re-runs every extension from the recorded base; must reproduce the
    /// recorded result exactly.
    pub fn replay(&self, lines: &Lines) -> Result<LanglandsDatum> {
        let mut datum = self.base_datum.clone();
        for step in self.steps.iter().rev() {
            match step {
                TraceStep::Induce(s) => {
                    let (next, _) = socle::extend_certified(lines, s.line, s.exponent, &datum)?;
                    datum = next;
                }
                TraceStep::Boundary { kind, .. } => {
                    datum = apply_wrap(kind, &datum)?;
                }
            }
        }
        Ok(datum)
    }

    pub fn certificates(&self) -> impl Iterator<Item = &SocleCertificate> {
        self.steps.iter().filter_map(|s| match s {
            TraceStep::Induce(r) => Some(&r.certificate),
            TraceStep::Boundary { .. } => None,
        })
    }

    pub fn boundary_notes(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().filter_map(|s| match s {
            TraceStep::Boundary { note, .. } => Some(note.as_str()),
            TraceStep::Induce(_) => None,
        })
    }
}

/// What a resolver may do with a boundary state.
pub enum BoundaryAction {
    /// The whole remaining pair has this value.
    Stop { datum: LanglandsDatum, note: String },
    /// Consume the listed blocks, record a wrap, and keep reducing.
    Consume { remove: Vec<JordanBlock>, wrap: WrapKind, note: String },
}

/// Supplies values for boundary states the simple reduction cannot pass.
pub trait BoundaryResolve {
    fn resolve(&self, base: &SigmaBase, pp: &PacketPair) -> Option<BoundaryAction>;
}

/// Resolver that refuses every boundary state.
pub struct NoBoundary;

impl BoundaryResolve for NoBoundary {
    fn resolve(&self, _base: &SigmaBase, _pp: &PacketPair) -> Option<BoundaryAction> {
        None
    }
}

/// Whether the remaining pair matches the base σ at the level of diagonal
/// restrictions and characters.
pub fn matches_sigma(base: &SigmaBase, pp: &PacketPair) -> bool {
    let sp = PacketPair::new(base.psi.clone(), base.eps.clone()).expect("base is valid");
    base.lines.ids().all(|line| {
        pp.psi.psi_d(line) == base.psi.psi_d(line)
            && pp.eps_on_diag(line) == sp.eps_on_diag(line)
    })
}

/// Mœglin reduction with the σ-matching base case only.
pub fn moeglin_rep(base: &SigmaBase, pp: &PacketPair) -> Result<ReductionTrace> {
    moeglin_rep_with(base, pp, &NoBoundary)
}

/// Mœglin reduction: repeatedly applies the simple step on the least line
/// with something to reduce, consulting the resolver at boundary states,
/// and certifies every socle on the way back up.
pub fn moeglin_rep_with(
    base: &SigmaBase,
    pp: &PacketPair,
    resolver: &dyn BoundaryResolve,
) -> Result<ReductionTrace> {
    if !pp.psi.is_elementary() {
        return Err(Error::InvalidParam(format!("{} is not elementary", pp.psi)));
    }
    if !pp.psi.good_parity(&base.lines) {
        return Err(Error::InvalidParam(format!("{} has bad parity", pp.psi)));
    }

    enum Pending {
        Exp { line: LineId, exp: HalfInt, before: (i64, i64), after: Option<(i64, i64)> },
        Wrap { kind: WrapKind, consumed: Vec<JordanBlock>, note: String },
    }

    let mut state = pp.clone();
    let mut pending: Vec<Pending> = Vec::new();
    let mut fuel = 10_000;
    let (base_datum, base_note) = loop {
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::InvalidParam("reduction does not terminate".into()));
        }
        let mut acted = false;
        let mut boundary: Option<Error> = None;
        for line in base.lines.ids() {
            let inv = b_a_invariants(base, &state, line)?;
            let Some(a) = inv.a else { continue };
            if a > inv.b + 2 || inv.b == 0 {
                let before = {
                    let blk = block_for(line, a, inv.delta_a);
                    (blk.a, blk.b)
                };
                let (exp, next) = reduce_step(base, &state, line)?;
                let after = if a > 2 {
                    let blk = block_for(line, a - 2, inv.delta_a);
                    Some((blk.a, blk.b))
                } else {
                    None
                };
                pending.push(Pending::Exp { line, exp, before, after });
                state = next;
                acted = true;
                break;
            }
            boundary = Some(Error::BoundaryCase { line: format!("{line:?}"), b: inv.b });
            break;
        }
        if acted {
            continue;
        }
        if let Some(err) = boundary {
            match resolver.resolve(base, &state) {
                Some(BoundaryAction::Stop { datum, note }) => break (datum, note),
                Some(BoundaryAction::Consume { remove, wrap, note }) => {
                    let mut next = state.clone();
                    for blk in &remove {
                        let psi = next.psi.without_block(blk).ok_or(Error::BlockMissing {
                            a: blk.a,
                            b: blk.b,
                        })?;
                        let mut eps = next.eps.clone();
                        if !psi.contains(blk) {
                            eps.remove(blk);
                        }
                        next = PacketPair::new(psi, eps)?;
                    }
                    pending.push(Pending::Wrap { kind: wrap, consumed: remove, note });
                    state = next;
                    continue;
                }
                None => return Err(err),
            }
        }
        // every line exhausted: the state must be σ itself
        if matches_sigma(base, &state) {
            break (LanglandsDatum::sigma(), "sigma".to_string());
        }
        return Err(Error::BaseMismatch(format!("{state}")));
    };

    let mut datum = base_datum.clone();
    let mut steps = Vec::with_capacity(pending.len());
    for p in pending.iter().rev() {
        match p {
            Pending::Exp { line, exp, before, after } => {
                let letters_before = datum.letters();
                let (next, cert) = socle::extend_certified(&base.lines, *line, *exp, &datum)
                    .map_err(|e| Error::CertificateFailure(format!("step [{exp}]: {e}")))?;
                datum = next;
                debug_assert_eq!(datum.letters(), letters_before + 1);
                steps.push(TraceStep::Induce(ReductionStep {
                    line: *line,
                    exponent: *exp,
                    before: *before,
                    after: *after,
                    certificate: cert,
                }));
            }
            Pending::Wrap { kind, consumed, note } => {
                let letters_before = datum.letters();
                let weight: i64 = consumed.iter().map(|b| b.weight()).sum();
                datum = apply_wrap(kind, &datum)?;
                if datum.letters() - letters_before != weight / 2 {
                    return Err(Error::CertificateFailure(format!(
                        "wrap {note} breaks the letter balance"
                    )));
                }
                steps.push(TraceStep::Boundary {
                    kind: kind.clone(),
                    consumed: consumed.clone(),
                    note: note.clone(),
                });
            }
        }
    }
    steps.reverse();
    Ok(ReductionTrace { steps, base_note, base_datum, result: datum })
}

/// Transport conventions for the dual character; the natural bijection is
/// tried first, then the variant that flips signs off the base chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualTransport {
    Natural,
    FlipOffChain,
}

/// Aubert dual of an elementary pair with discrete diagonal restriction,
/// computed by reducing the swapped parameter.
pub fn dual_of_elementary_ddr(
    base: &SigmaBase,
    pp: &PacketPair,
    resolver: &dyn BoundaryResolve,
) -> Result<(ReductionTrace, DualTransport)> {
    if !pp.psi.is_elementary() || !pp.psi.is_ddr(&base.lines) {
        return Err(Error::InvalidParam(format!(
            "{} is not elementary with discrete diagonal restriction",
            pp.psi
        )));
    }
    let natural = aubert_param(pp);
    match moeglin_rep_with(base, &natural, resolver) {
        Ok(trace) => Ok((trace, DualTransport::Natural)),
        Err(first_err) => {
            let flipped = flip_off_chain(base, &natural);
            match moeglin_rep_with(base, &flipped, resolver) {
                Ok(trace) => Ok((trace, DualTransport::FlipOffChain)),
                Err(_) => Err(first_err),
            }
        }
    }
}

/// Flips ε on every block whose size is absent from the base chain's
/// diagonal restriction.
fn flip_off_chain(base: &SigmaBase, pp: &PacketPair) -> PacketPair {
    let mut eps = EpsChar::new();
    for (blk, s) in pp.eps.iter() {
        let chain = base.psi.psi_d(blk.line);
        let c = blk.a.max(blk.b);
        let flipped = if chain.contains(&c) { s } else { s.flip() };
        eps.set(*blk, flipped);
    }
    PacketPair { psi: pp.psi.clone(), eps }
}

/// Descends a representation from a dominating parameter by the Jac chain
/// of unit shift rows, smallest exponents first.
pub fn dominate_descend(
    base: &SigmaBase,
    pp_high: &PacketPair,
    target: &AParam,
    rep: &LanglandsDatum,
) -> Result<JacResult> {
    if !pp_high.psi.is_ddr(&base.lines) {
        return Err(Error::InvalidParam(format!("{} is not discrete", pp_high.psi)));
    }
    // order-preserving bijection per line: sort both sides by c and match
    let mut chain: Vec<(LineId, HalfInt)> = Vec::new();
    for line in base.lines.ids() {
        let mut high: Vec<&JordanBlock> = pp_high.psi.on_line(line).collect();
        let mut low: Vec<&JordanBlock> = target.on_line(line).collect();
        if high.len() != low.len() {
            return Err(Error::UnsupportedShift(format!(
                "block counts differ on line {line:?}"
            )));
        }
        high.sort_by_key(|b| (b.twice_upper(), b.twice_lower()));
        low.sort_by_key(|b| (b.twice_upper(), b.twice_lower()));
        for (h, l) in high.iter().zip(low.iter()) {
            if h.zeta() != l.zeta() && h.a != h.b && l.a != l.b {
                return Err(Error::UnsupportedShift(format!(
                    "blocks {h} and {l} have different orientation"
                )));
            }
            let da = h.twice_upper() - l.twice_upper();
            let db = h.twice_lower() - l.twice_lower();
            if da != db || da < 0 || da % 2 != 0 {
                return Err(Error::UnsupportedShift(format!(
                    "shift from {h} to {l} is not a chain of unit rows"
                )));
            }
            let shift = da / 2;
            for s in 0..shift {
                // unit row exponent for one step: ζ·(A − s), A the current
                // upper coordinate
                let twice_exp = h.zeta().val() * (h.twice_upper() - 2 * s);
                chain.push((line, HalfInt::halves(twice_exp)));
            }
        }
    }
    chain.sort_by_key(|(_, e)| e.abs());
    let mut current = rep.clone();
    for (line, exp) in chain {
        match socle::jac(&base.lines, line, exp, &current)? {
            JacResult::Sum(s) if s.is_zero() => return Ok(JacResult::zero()),
            JacResult::Sum(s) => {
                let (next, _) = s.iter().next().map(|(b, c)| (b.clone(), c)).unwrap();
                current = next;
            }
            JacResult::Undecidable => return Ok(JacResult::Undecidable),
        }
    }
    Ok(JacResult::single(current))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_52() -> SigmaBase {
        SigmaBase::minimal(HalfInt::halves(5), Sign::Plus).unwrap()
    }

    fn pair(base: &SigmaBase, specs: &[(i64, i64, Sign)]) -> PacketPair {
        let line = base.line();
        let (mut psi, mut eps) = base_family(base);
        for &(a, b, s) in specs {
            let blk = JordanBlock::new(line, a, b);
            psi = psi.with_block(blk);
            eps.set(blk, s);
        }
        PacketPair::new(psi, eps).unwrap()
    }

    /// (ψ, ε) minus the top two chain blocks, the family base.
    fn base_family(base: &SigmaBase) -> (AParam, EpsChar) {
        let line = base.line();
        let chain = base.psi.psi_d(line);
        let mut psi = base.psi.clone();
        let mut eps = base.eps.clone();
        for &c in chain.iter().rev().take(2) {
            let blk = block_for(line, c, Sign::Plus);
            psi = psi.without_block(&blk).unwrap();
            eps.remove(&blk);
        }
        (psi, eps)
    }

    #[test]
    fn minimal_bases_have_forced_chains() {
        let b = base_52();
        assert_eq!(b.psi.psi_d(b.line()), vec![2, 4]);
        let b3 = SigmaBase::minimal(HalfInt::int(3), Sign::Plus).unwrap();
        assert_eq!(b3.psi.psi_d(b3.line()), vec![1, 3, 5]);
        let b0 = SigmaBase::minimal(HalfInt::ZERO, Sign::Plus).unwrap();
        assert!(b0.psi.is_empty());
    }

    #[test]
    fn psi_d_shapes() {
        let l = LineId(0);
        assert_eq!(JordanBlock::new(l, 3, 2).diag_sizes(), vec![2, 4]);
        assert_eq!(JordanBlock::new(l, 4, 1).diag_sizes(), vec![4]);
        assert_eq!(JordanBlock::new(l, 2, 2).diag_sizes(), vec![1, 3]);
        // weight identity
        for (a, b) in [(3, 2), (4, 1), (2, 2), (5, 4)] {
            let blk = JordanBlock::new(l, a, b);
            assert_eq!(blk.diag_sizes().iter().sum::<i64>(), a * b);
        }
    }

    #[test]
    fn ddr_detects_overlap() {
        let (lines, l) = Lines::single("rho", HalfInt::ZERO);
        let good = AParam::new([JordanBlock::new(l, 2, 1), JordanBlock::new(l, 4, 1)]);
        assert!(good.is_ddr(&lines));
        let bad = AParam::new([JordanBlock::new(l, 3, 2), JordanBlock::new(l, 4, 1)]);
        assert!(!bad.is_ddr(&lines));
        assert!(AParam::default().is_ddr(&lines));
    }

    #[test]
    fn elementary_predicate() {
        let l = LineId(0);
        assert!(AParam::new([JordanBlock::new(l, 5, 1), JordanBlock::new(l, 1, 3)])
            .is_elementary());
        assert!(!AParam::new([JordanBlock::new(l, 2, 2)]).is_elementary());
        assert!(AParam::default().is_elementary());
    }

    #[test]
    fn invariants_examples() {
        // even line: chain 2, 4 with alternating signs is fully cuspidal
        let base = base_52();
        let l = base.line();
        let pp = PacketPair::new(base.psi.clone(), base.eps.clone()).unwrap();
        let inv = b_a_invariants(&base, &pp, l).unwrap();
        assert_eq!((inv.b, inv.a, inv.boundary), (4, None, false));

        // gap of four breaks the chain
        let mut eps = EpsChar::new();
        let b2 = JordanBlock::new(l, 2, 1);
        let b6 = JordanBlock::new(l, 6, 1);
        eps.set(b2, Sign::Minus);
        eps.set(b6, Sign::Plus);
        let pp = PacketPair::new(AParam::new([b2, b6]), eps).unwrap();
        let inv = b_a_invariants(&base, &pp, l).unwrap();
        assert_eq!((inv.b, inv.a, inv.boundary), (2, Some(6), false));

        // equal signs at gap two: the boundary case
        let mut eps = EpsChar::new();
        let b4 = JordanBlock::new(l, 4, 1);
        eps.set(b2, Sign::Minus);
        eps.set(b4, Sign::Minus);
        let pp = PacketPair::new(AParam::new([b2, b4]), eps).unwrap();
        let inv = b_a_invariants(&base, &pp, l).unwrap();
        assert_eq!((inv.b, inv.a, inv.boundary), (2, Some(4), true));
    }

    #[test]
    fn deform_rules() {
        let base = base_52();
        let l = base.line();
        let b61 = JordanBlock::new(l, 6, 1);
        let b12 = JordanBlock::new(l, 1, 2);
        let mut eps = EpsChar::new();
        eps.set(b61, Sign::Plus);
        eps.set(b12, Sign::Minus);
        let pp = PacketPair::new(AParam::new([b61, b12]), eps).unwrap();
        let out = deform(&pp, b61, JordanBlock::new(l, 4, 1)).unwrap();
        assert!(out.psi.contains(&JordanBlock::new(l, 4, 1)));
        assert_eq!(out.eps.get(&JordanBlock::new(l, 4, 1)), Some(Sign::Plus));
        assert!(deform(&pp, b61, JordanBlock::new(l, 5, 1)).is_err());
        assert!(deform(&pp, b12, JordanBlock::new(l, 1, 2)).is_err());
    }

    #[test]
    fn aubert_is_an_involution() {
        let l = LineId(0);
        let b = JordanBlock::new(l, 6, 1);
        let c = JordanBlock::new(l, 1, 2);
        let pp = PacketPair::new(
            AParam::new([b, c]),
            EpsChar::new().with(b, Sign::Plus).with(c, Sign::Minus),
        )
        .unwrap();
        let dual = aubert_param(&pp);
        assert!(dual.psi.contains(&JordanBlock::new(l, 1, 6)));
        assert!(dual.psi.contains(&JordanBlock::new(l, 2, 1)));
        assert_eq!(aubert_param(&dual), pp);
        // tempered swaps to cotempered
        assert!(dual.psi.blocks().iter().any(|x| x.a == 1 && x.b == 6));
    }

    #[test]
    fn steinberg_family_reduces_to_sigma() {
        // blocks (2α+1+2n, 1), (1, 2α−3) resolve to the Steinberg chain
        let base = base_52();
        let l = base.line();
        for n in 0..3i64 {
            let pp = pair(&base, &[(6 + 2 * n, 1, Sign::Plus), (1, 2, Sign::Minus)]);
            let trace = moeglin_rep(&base, &pp).unwrap();
            let seg = crate::segment::Segment::new(
                l,
                HalfInt::halves(5),
                HalfInt::halves(5 + 2 * n),
            );
            assert_eq!(
                trace.result,
                LanglandsDatum::tempered(TemperedSymbol::GenSteinberg { seg })
            );
            assert_eq!(trace.replay(&base.lines).unwrap(), trace.result);
        }
    }

    #[test]
    fn weighted_weight_needs_hints() {
        let (mut lines, l) = Lines::single("rho", HalfInt::halves(5));
        let p = AParam::new([JordanBlock::new(l, 3, 2)]);
        assert_eq!(p.weighted_weight(&lines), None);
        let mut hinted = lines.get(l).clone();
        hinted.dim_hint = Some(2);
        lines = {
            let mut fresh = Lines::new();
            fresh.push(hinted);
            fresh
        };
        assert_eq!(p.weighted_weight(&lines), Some(12));
    }

    #[test]
    fn speh_labels() {
        let l = LineId(0);
        let p = AParam::new([JordanBlock::new(l, 3, 2), JordanBlock::new(l, 4, 1)]);
        assert_eq!(p.attach_gl_rep(), vec![(l, 3, 2), (l, 4, 1)]);
        assert!(AParam::default().attach_gl_rep().is_empty());
    }

    #[test]
    fn sigma_pair_resolves_to_sigma() {
        let base = base_52();
        let pp = pair(&base, &[(4, 1, Sign::Plus), (1, 2, Sign::Minus)]);
        let trace = moeglin_rep(&base, &pp).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.result, LanglandsDatum::sigma());
    }
}
