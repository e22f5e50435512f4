//! Symbolic labels for irreducible representations of the classical groups
//! over the fixed cuspidal base σ, and their defining embeddings into
//! representations induced from σ.
//!
//! A label is never decomposed into anything smaller; equality is equality
//! of canonical labels. What the engine knows about a label is (a) the
//! induced expression its defining embedding chain lands in (its full
//! envelope) and (b) which Jacquet-module left factors its irreducibility
//! permits, which is what the multiplicity certificates consume.

use crate::exps::ExpString;
use crate::formal::FormalSum;
use crate::half::HalfInt;
use crate::hopf;
use crate::line::{LineId, Lines};
use crate::segment::Segment;
use crate::word::{GLGen, GLWord, GenKind};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn val(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Tempered labels over σ.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum TemperedSymbol {
    /// σ itself.
    Cusp,
    /// δ(\[α, α+n\]; σ), the generalised Steinberg chain; `seg.x` equals the
    /// line's reducibility exponent.
    GenSteinberg { seg: Segment },
    /// Strongly positive chain δ_sp(Δ₁, …, Δ_k; σ) with consecutive starts
    /// and strictly nested ends, top rung anchored at α.
    StronglyPositive { rungs: Vec<Segment> },
    /// δ(\[−x, y\]_±; σ): one of the two irreducible subrepresentations of
    /// δ(\[−x, y\]) ⋊ σ. The segment stores \[−x, y\].
    PMSquare { seg: Segment, sign: Sign },
    /// δ(\[0, n\]_±; σ) on a line with α = 0.
    PMZeroChain { line: LineId, n: i64, sign: Sign },
    /// τ(\[0\]_±; δ(\[1, n\]; σ)) on a line with α = 1.
    TauPM { sign: Sign, seg: Segment },
    /// ν⁰ρ ⋊ inner, irreducible (α of the line not 0).
    ZeroExt { line: LineId, inner: Box<TemperedSymbol> },
    /// δ(Δ) ⋊ σ irreducible tempered, Δ a two-sided segment missing the
    /// reducibility point.
    FullSeg { seg: Segment },
    /// δ(Δ; σ): the unique irreducible subrepresentation of δ(Δ) ⋊ σ for a
    /// one-sided segment through the reducibility point.
    SegSquare { seg: Segment },
    /// Summand label τ(ν^exp …; inner) used only to name tempered
    /// constituents in the catalog; carries no envelope.
    TauGen { exp: HalfInt, sign: Sign, inner: Box<TemperedSymbol> },
}

impl TemperedSymbol {
    /// Number of cuspidal letters over σ.
    pub fn letters(&self) -> i64 {
        match self {
            TemperedSymbol::Cusp => 0,
            TemperedSymbol::GenSteinberg { seg }
            | TemperedSymbol::FullSeg { seg }
            | TemperedSymbol::SegSquare { seg } => seg.len(),
            TemperedSymbol::StronglyPositive { rungs } => rungs.iter().map(|s| s.len()).sum(),
            TemperedSymbol::PMSquare { seg, .. } => seg.len(),
            TemperedSymbol::PMZeroChain { n, .. } => n + 1,
            TemperedSymbol::TauPM { seg, .. } => seg.len() + 1,
            TemperedSymbol::ZeroExt { inner, .. } => inner.letters() + 1,
            TemperedSymbol::TauGen { inner, .. } => inner.letters() + 1,
        }
    }

    /// Envelope factors of the defining embedding into an induced-from-σ
    /// expression, outermost first.
    pub fn envelope_factors(&self) -> Result<Vec<GLGen>> {
        Ok(match self {
            TemperedSymbol::Cusp => vec![],
            TemperedSymbol::GenSteinberg { seg } => vec![GLGen::delta(*seg)],
            TemperedSymbol::StronglyPositive { rungs } => {
                rungs.iter().map(|s| GLGen::delta(*s)).collect()
            }
            TemperedSymbol::PMSquare { seg, .. }
            | TemperedSymbol::FullSeg { seg }
            | TemperedSymbol::SegSquare { seg } => {
                vec![GLGen::delta(*seg)]
            }
            TemperedSymbol::PMZeroChain { line, n, .. } => {
                let mut v = Vec::new();
                if *n >= 1 {
                    v.push(GLGen::delta(Segment::new(*line, HalfInt::int(1), HalfInt::int(*n))));
                }
                v.push(GLGen::point(*line, HalfInt::ZERO));
                v
            }
            TemperedSymbol::TauPM { seg, .. } => {
                vec![GLGen::point(seg.line, HalfInt::ZERO), GLGen::delta(*seg)]
            }
            TemperedSymbol::ZeroExt { line, inner } => {
                let mut v = vec![GLGen::point(*line, HalfInt::ZERO)];
                v.extend(inner.envelope_factors()?);
                v
            }
            TemperedSymbol::TauGen { .. } => {
                return Err(Error::UnsupportedSymbol(format!("{self}")));
            }
        })
    }

    /// The string certifying the defining embedding, outermost first.
    pub fn leading_string(&self) -> Result<ExpString> {
        let mut entries = Vec::new();
        for g in self.envelope_factors()? {
            entries.extend(g.string());
        }
        Ok(ExpString::new(entries))
    }

    /// Whether the label is square integrable (strict Casselman bound) as
    /// opposed to merely tempered.
    fn is_square_integrable(&self) -> bool {
        match self {
            TemperedSymbol::Cusp => true,
            TemperedSymbol::GenSteinberg { .. } | TemperedSymbol::StronglyPositive { .. } => true,
            TemperedSymbol::PMSquare { seg, .. } => -seg.x != seg.y,
            TemperedSymbol::SegSquare { .. } => true,
            TemperedSymbol::PMZeroChain { n, .. } => *n >= 1,
            TemperedSymbol::TauPM { .. }
            | TemperedSymbol::ZeroExt { .. }
            | TemperedSymbol::FullSeg { .. }
            | TemperedSymbol::TauGen { .. } => false,
        }
    }

    /// Can `factor` occur as a factor of a left Jacquet part of this
    /// irreducible label? The shapes below follow the classical Jacquet
    /// module structure of each family; the string-head sign bound is the
    /// Casselman criterion. Admitting too much only makes certificates fail
    /// loudly, never silently pass.
    pub fn left_cone_allows(&self, factor: &GLGen) -> bool {
        if factor.kind != GenKind::Delta {
            // left parts of μ* of these labels are products of δ's
            return false;
        }
        let seg = factor.seg;
        let head_ok = if self.is_square_integrable() {
            seg.y.is_positive()
        } else {
            !seg.y.is_negative()
        };
        match self {
            TemperedSymbol::Cusp => false,
            TemperedSymbol::GenSteinberg { seg: chain } => {
                // suffixes [i, top] of the chain
                head_ok && seg.y == chain.y && seg.x >= chain.x
            }
            TemperedSymbol::StronglyPositive { rungs } => {
                head_ok && rungs.iter().any(|r| seg.y == r.y && seg.x >= r.x)
            }
            TemperedSymbol::PMSquare { seg: sq, .. }
            | TemperedSymbol::FullSeg { seg: sq }
            | TemperedSymbol::SegSquare { seg: sq } => {
                // halves of the splittings of δ([−x, y]): reflected prefixes
                // ending at x, or suffixes ending at y
                head_ok
                    && ((seg.y == -sq.x && seg.x >= -sq.y) || (seg.y == sq.y && seg.x >= sq.x))
            }
            TemperedSymbol::PMZeroChain { line, n, .. } => {
                let zero = Segment::point(*line, HalfInt::ZERO);
                head_ok
                    && seg.line == *line
                    && ((seg.y == HalfInt::int(*n) && !seg.x.is_negative()) || seg == zero)
            }
            TemperedSymbol::TauPM { seg: chain, .. } => {
                let zero = Segment::point(chain.line, HalfInt::ZERO);
                head_ok && ((seg.y == chain.y && seg.x >= chain.x) || seg == zero)
            }
            TemperedSymbol::ZeroExt { line, inner } => {
                seg == Segment::point(*line, HalfInt::ZERO) || inner.left_cone_allows(factor)
            }
            TemperedSymbol::TauGen { .. } => true,
        }
    }
}

impl fmt::Display for TemperedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemperedSymbol::Cusp => write!(f, "sigma"),
            TemperedSymbol::GenSteinberg { seg } => write!(f, "delta({seg};sigma)"),
            TemperedSymbol::StronglyPositive { rungs } => {
                write!(f, "delta_sp(")?;
                for (i, r) in rungs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ";sigma)")
            }
            TemperedSymbol::PMSquare { seg, sign } => write!(f, "delta({seg}_{sign};sigma)"),
            TemperedSymbol::PMZeroChain { n, sign, .. } => {
                if *n == 0 {
                    write!(f, "delta([0]_{sign};sigma)")
                } else {
                    write!(f, "delta([0,{n}]_{sign};sigma)")
                }
            }
            TemperedSymbol::TauPM { sign, seg } => write!(f, "tau([0]_{sign};delta({seg};sigma))"),
            TemperedSymbol::ZeroExt { inner, .. } => write!(f, "[0]x{inner}"),
            TemperedSymbol::FullSeg { seg } => write!(f, "delta{seg}xsigma"),
            TemperedSymbol::SegSquare { seg } => write!(f, "delta({seg};sigma)"),
            TemperedSymbol::TauGen { exp, sign, inner } => {
                write!(f, "tau([{exp}]_{sign};{inner})")
            }
        }
    }
}

/// A Langlands datum L(a; τ): a multiset of segments with positive
/// exponent over a tempered label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct LanglandsDatum {
    segs: Vec<Segment>,
    pub temp: TemperedSymbol,
}

impl LanglandsDatum {
    pub fn new(segs: impl IntoIterator<Item = Segment>, temp: TemperedSymbol) -> Result<Self> {
        let mut v: Vec<Segment> = segs.into_iter().collect();
        for s in &v {
            if s.is_empty() || s.twice_e() <= 0 {
                return Err(Error::InvalidParam(format!(
                    "Langlands segment {s} must be nonempty with positive exponent"
                )));
            }
        }
        v.sort();
        Ok(LanglandsDatum { segs: v, temp })
    }

    pub fn tempered(temp: TemperedSymbol) -> Self {
        LanglandsDatum { segs: Vec::new(), temp }
    }

    pub fn sigma() -> Self {
        LanglandsDatum::tempered(TemperedSymbol::Cusp)
    }

    pub fn segs(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_tempered(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn letters(&self) -> i64 {
        self.segs.iter().map(|s| s.len()).sum::<i64>() + self.temp.letters()
    }

    /// Datum with one more segment.
    pub fn with_seg(&self, seg: Segment) -> Result<Self> {
        let mut v = self.segs.clone();
        v.push(seg);
        LanglandsDatum::new(v, self.temp.clone())
    }

    /// Datum with one occurrence of a segment removed.
    pub fn without_seg(&self, seg: &Segment) -> Option<Self> {
        let pos = self.segs.iter().position(|s| s == seg)?;
        let mut v = self.segs.clone();
        v.remove(pos);
        Some(LanglandsDatum { segs: v, temp: self.temp.clone() })
    }

    /// Datum with the tempered part replaced.
    pub fn with_temp(&self, temp: TemperedSymbol) -> Self {
        LanglandsDatum { segs: self.segs.clone(), temp }
    }

    /// Segments sorted by decreasing exponent, the standard-module order.
    /// Ties break by the canonical segment order, so the result is unique
    /// for equal multisets.
    pub fn segs_standard_order(&self) -> Vec<Segment> {
        let mut v = self.segs.clone();
        v.sort_by_key(|s| (-s.twice_e(), *s));
        v
    }

    /// Grouped contragredient factors of the Langlands part of the defining
    /// embedding, outermost first: maximal runs of consecutive one-point
    /// segments fold into a single ζ factor, other segments dualise to δ.
    pub fn envelope_groups(&self) -> Vec<GLGen> {
        let ordered = self.segs_standard_order();
        let mut groups: Vec<GLGen> = Vec::new();
        let mut run: Option<Segment> = None; // ascending original points [low, high]
        for s in &ordered {
            if s.len() == 1 {
                match run {
                    Some(r) if r.line == s.line && s.x + 1 == r.x => {
                        run = Some(Segment { line: r.line, x: s.x, y: r.y });
                        continue;
                    }
                    Some(r) => {
                        groups.push(zeta_group(r));
                        run = Some(*s);
                        continue;
                    }
                    None => {
                        run = Some(*s);
                        continue;
                    }
                }
            }
            if let Some(r) = run.take() {
                groups.push(zeta_group(r));
            }
            groups.push(GLGen::delta(s.contragredient()));
        }
        if let Some(r) = run {
            groups.push(zeta_group(r));
        }
        groups
    }

    /// Full envelope over σ: an induced expression dominating the datum.
    pub fn full_envelope(&self) -> Result<InducedExpr> {
        let mut factors = self.envelope_groups();
        factors.extend(self.temp.envelope_factors()?);
        Ok(InducedExpr { gl: GLWord::canon(factors), base: ExprBase::Sigma })
    }

    /// The string of the defining embedding chain, outermost first.
    pub fn leading_string(&self) -> Result<ExpString> {
        let mut entries = Vec::new();
        for g in self.envelope_groups() {
            entries.extend(g.string());
        }
        entries.extend(self.temp.leading_string()?.entries);
        Ok(ExpString::new(entries))
    }
}

fn zeta_group(run: Segment) -> GLGen {
    GLGen::zeta(run.contragredient())
}

/// Classical tail of an induced expression.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ExprBase {
    /// The fixed cuspidal σ.
    Sigma,
    /// An irreducible tempered label kept opaque.
    Temp(TemperedSymbol),
}

/// π ⋊ base at the Grothendieck level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct InducedExpr {
    pub gl: GLWord,
    pub base: ExprBase,
}

impl InducedExpr {
    pub fn over_sigma(gl: GLWord) -> Self {
        InducedExpr { gl, base: ExprBase::Sigma }
    }
}

impl fmt::Display for InducedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            ExprBase::Sigma => write!(f, "{}|sigma", self.gl),
            ExprBase::Temp(t) => write!(f, "{}|{}", self.gl, t),
        }
    }
}

impl fmt::Display for LanglandsDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return write!(f, "{}", self.temp);
        }
        write!(f, "L(")?;
        for (i, s) in self.segs_standard_order().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ";{})", self.temp)
    }
}

/// The standard module λ(t) of a datum: its segments as δ factors over the
/// tempered label, displayed with weakly decreasing exponents.
pub fn standard_module(d: &LanglandsDatum) -> InducedExpr {
    let gl = GLWord::canon(d.segs.iter().map(|s| GLGen::delta(*s)));
    InducedExpr { gl, base: ExprBase::Temp(d.temp.clone()) }
}

/// Full cuspidal expansion of an induced expression over σ in the
/// exponent-string basis.
pub fn mu_star_cuspidal(e: &InducedExpr) -> Result<FormalSum<ExpString>> {
    match e.base {
        ExprBase::Sigma => expand_words(hopf::mstar_gl(&e.gl)),
        ExprBase::Temp(_) => Err(Error::UnsupportedSymbol(
            "cuspidal expansion requires an expression over sigma".into(),
        )),
    }
}

fn expand_words(sum: FormalSum<GLWord>) -> Result<FormalSum<ExpString>> {
    let mut out = FormalSum::zero();
    for (w, c) in sum.iter() {
        let part = hopf::cuspidal_expand(w)?;
        for (s, k) in part.iter() {
            out.add_term(s.clone(), c * k);
        }
    }
    Ok(out)
}

/// Validation of symbol invariants against the line registry.
pub fn validate_symbol(t: &TemperedSymbol, lines: &Lines) -> Result<()> {
    match t {
        TemperedSymbol::Cusp => Ok(()),
        TemperedSymbol::GenSteinberg { seg } => {
            let alpha = lines.get(seg.line).alpha;
            if !alpha.is_positive() || seg.x != alpha {
                return Err(Error::UnsupportedSymbol(format!(
                    "generalised Steinberg must start at alpha > 0, got {seg}"
                )));
            }
            Ok(())
        }
        TemperedSymbol::StronglyPositive { rungs } => {
            if rungs.is_empty() {
                return Err(Error::UnsupportedSymbol("empty strongly positive chain".into()));
            }
            let alpha = lines.get(rungs[0].line).alpha;
            if alpha < HalfInt::halves(3) {
                return Err(Error::UnsupportedSymbol(format!(
                    "strongly positive chains need alpha >= 3/2, got {alpha}"
                )));
            }
            let top = rungs.last().unwrap();
            if top.x != alpha {
                return Err(Error::UnsupportedSymbol(format!(
                    "top rung {top} must start at alpha = {alpha}"
                )));
            }
            for w in rungs.windows(2) {
                if w[1].x != w[0].x + 1 || w[1].y < w[0].y + 1 {
                    return Err(Error::UnsupportedSymbol(format!(
                        "rungs {} and {} are not strongly positive",
                        w[0], w[1]
                    )));
                }
            }
            for r in rungs {
                if !r.x.is_positive() {
                    return Err(Error::UnsupportedSymbol(format!("rung {r} not positive")));
                }
            }
            Ok(())
        }
        TemperedSymbol::PMSquare { seg, .. } => {
            let alpha = lines.get(seg.line).alpha;
            let x = -seg.x;
            let y = seg.y;
            let ok = alpha.is_positive()
                && x <= y
                && (x - alpha).is_integer()
                && !(x - alpha).is_negative()
                && !(y - alpha).is_negative();
            if !ok {
                return Err(Error::UnsupportedSymbol(format!(
                    "{seg} is not a valid two-sided segment at alpha = {alpha}"
                )));
            }
            Ok(())
        }
        TemperedSymbol::PMZeroChain { line, n, .. } => {
            if lines.get(*line).alpha != HalfInt::ZERO || *n < 0 {
                return Err(Error::UnsupportedSymbol("zero chain needs alpha = 0, n >= 0".into()));
            }
            Ok(())
        }
        TemperedSymbol::TauPM { seg, .. } => {
            let alpha = lines.get(seg.line).alpha;
            if alpha != HalfInt::int(1) || seg.x != HalfInt::int(1) || seg.is_empty() {
                return Err(Error::UnsupportedSymbol("tau labels need alpha = 1, seg [1,n]".into()));
            }
            Ok(())
        }
        TemperedSymbol::ZeroExt { inner, .. } | TemperedSymbol::TauGen { inner, .. } => {
            validate_symbol(inner, lines)
        }
        TemperedSymbol::SegSquare { seg } => {
            let alpha = lines.get(seg.line).alpha;
            if !(seg.x <= alpha && alpha <= seg.y && seg.x.is_positive()) {
                return Err(Error::UnsupportedSymbol(format!(
                    "{seg} must run through alpha = {alpha} from a positive start"
                )));
            }
            Ok(())
        }
        TemperedSymbol::FullSeg { .. } => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::Lines;

    fn line_ctx(alpha_halves: i64) -> (Lines, LineId) {
        Lines::single("rho", HalfInt::halves(alpha_halves))
    }

    fn seg(l: LineId, x2: i64, y2: i64) -> Segment {
        Segment::new(l, HalfInt::halves(x2), HalfInt::halves(y2))
    }

    #[test]
    fn standard_module_order_and_envelope() {
        let (_, l) = line_ctx(5);
        // L([3/2],[5/2]; delta([5/2,7/2]; sigma))
        let d = LanglandsDatum::new(
            [seg(l, 3, 3), seg(l, 5, 5)],
            TemperedSymbol::GenSteinberg { seg: seg(l, 5, 7) },
        )
        .unwrap();
        let sm = standard_module(&d);
        assert_eq!(sm.gl.letters(), 2);
        let ordered = d.segs_standard_order();
        assert_eq!(ordered[0], seg(l, 5, 5));

        // grouped envelope: one zeta factor [-5/2,-3/2] plus the chain
        let env = d.full_envelope().unwrap();
        let zeta = GLGen::zeta(seg(l, -5, -3));
        let chain = GLGen::delta(seg(l, 5, 7));
        assert_eq!(env.gl, GLWord::canon([zeta, chain]));

        let leading = d.leading_string().unwrap();
        assert_eq!(leading, ExpString::on_line(l, &[-5, -3, 7, 5]));
    }

    #[test]
    fn tempered_iff_no_segs() {
        let (_, l) = line_ctx(5);
        let t = LanglandsDatum::tempered(TemperedSymbol::GenSteinberg { seg: seg(l, 5, 9) });
        assert!(t.is_tempered());
        assert!(standard_module(&t).gl.is_unit());
    }

    #[test]
    fn mu_star_cuspidal_point() {
        let (_, l) = line_ctx(5);
        let alpha = HalfInt::halves(5);
        let e = InducedExpr::over_sigma(GLWord::single(GLGen::point(l, alpha)));
        let s = mu_star_cuspidal(&e).unwrap();
        let expected: FormalSum<ExpString> =
            [(ExpString::on_line(l, &[5]), 1), (ExpString::on_line(l, &[-5]), 1)]
                .into_iter()
                .collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn mu_star_cuspidal_segment_pins_four_strings() {
        // delta([alpha, alpha+1]) over sigma expands to exactly four strings
        let (_, l) = line_ctx(5);
        let e = InducedExpr::over_sigma(GLWord::single(GLGen::delta(seg(l, 5, 7))));
        let s = mu_star_cuspidal(&e).unwrap();
        let expected: FormalSum<ExpString> = [
            (ExpString::on_line(l, &[7, 5]), 1),
            (ExpString::on_line(l, &[7, -5]), 1),
            (ExpString::on_line(l, &[-5, 7]), 1),
            (ExpString::on_line(l, &[-5, -7]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn unit_over_sigma() {
        let e = InducedExpr::over_sigma(GLWord::unit());
        let s = mu_star_cuspidal(&e).unwrap();
        assert_eq!(s, FormalSum::singleton(ExpString::empty()));
    }

    #[test]
    fn envelope_groups_mixed_segments() {
        let (_, l) = line_ctx(0);
        // a real segment [0,1] plus the point run [2],[3]
        let d = LanglandsDatum::new(
            [seg(l, 0, 2), seg(l, 4, 4), seg(l, 6, 6)],
            TemperedSymbol::Cusp,
        )
        .unwrap();
        let groups = d.envelope_groups();
        assert_eq!(groups, vec![GLGen::zeta(seg(l, -6, -4)), GLGen::delta(seg(l, -2, 0))]);
    }

    #[test]
    fn left_cone_shapes() {
        let (_, l) = line_ctx(5);
        let gs = TemperedSymbol::GenSteinberg { seg: seg(l, 5, 9) };
        assert!(gs.left_cone_allows(&GLGen::delta(seg(l, 7, 9))));
        assert!(gs.left_cone_allows(&GLGen::point(l, HalfInt::halves(9))));
        assert!(!gs.left_cone_allows(&GLGen::point(l, HalfInt::halves(5))));
        assert!(!gs.left_cone_allows(&GLGen::point(l, HalfInt::halves(-9))));
        assert!(!gs.left_cone_allows(&GLGen::zeta(seg(l, 7, 9))));
        assert!(!TemperedSymbol::Cusp.left_cone_allows(&GLGen::point(l, HalfInt::halves(1))));
    }
}
