//! Multiplicity-one certificates for socles of ν^xρ ⋊ π, the datum-level
//! extension rules they certify, and the Jac operators built on top.
//!
//! For a step π ↪ ν^xρ ⋊ π′ the certificate works in the expression
//! Γ = \[x\] × G′ ⋊ T′, where G′ is the grouped Langlands part of π′'s
//! defining embedding and T′ its tempered label kept opaque. Every
//! irreducible subrepresentation of Γ carries the Frobenius term
//! γ = (\[x\] × G′) ⊗ T′ in its Jacquet module, so soc(Γ) is irreducible as
//! soon as γ has multiplicity one in μ*(Γ). That multiplicity splits into
//! the coefficient of the word \[x\]·G′ in M*_GL(\[x\]·G′) plus leakage from
//! μ*(T′), and the leakage is excluded factor by factor through the
//! Jacquet cone of the label. A failed count aborts; nothing is guessed.

use crate::classical::{ExprBase, InducedExpr, LanglandsDatum, Sign, TemperedSymbol};
use crate::exps::ExpString;
use crate::formal::FormalSum;
use crate::half::HalfInt;
use crate::hopf;
use crate::line::{LineId, Lines};
use crate::segment::Segment;
use crate::word::{GLGen, GLWord};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A certified multiplicity-one socle identification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleCertificate {
    /// Exponent of the inducing cuspidal, doubled in JSON.
    pub x: HalfInt,
    pub line: LineId,
    /// The representation being induced from.
    pub parent: LanglandsDatum,
    /// The certified unique irreducible subrepresentation.
    pub candidate: LanglandsDatum,
    /// The Frobenius word whose multiplicity was counted.
    pub gamma_word: GLWord,
    /// The candidate's defining-embedding string.
    pub leading_string: ExpString,
    /// Always 1 in a constructed certificate.
    pub mult: i64,
}

/// Result of a Jac operator at one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacResult {
    Sum(FormalSum<LanglandsDatum>),
    Undecidable,
}

impl JacResult {
    pub fn zero() -> JacResult {
        JacResult::Sum(FormalSum::zero())
    }

    pub fn single(d: LanglandsDatum) -> JacResult {
        JacResult::Sum(FormalSum::singleton(d))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, JacResult::Sum(s) if s.is_zero())
    }
}

/// Counts the Frobenius term of Γ = \[x\] × G′ ⋊ T′ and checks that the
/// label T′ cannot leak factors of the word back onto the left side.
fn certify_gamma(line: LineId, x: HalfInt, parent: &LanglandsDatum) -> Result<GLWord> {
    let mut factors = parent.envelope_groups();
    factors.push(GLGen::point(line, x));
    let gamma = GLWord::canon(factors);

    let count = hopf::mstar_gl(&gamma).coeff(&gamma);
    if count != 1 {
        return Err(Error::MultiplicityNotOne(count));
    }
    for f in gamma.factors() {
        if parent.temp.left_cone_allows(f) {
            return Err(Error::CertificateLeak(format!(
                "factor {f} lies in the Jacquet cone of {}",
                parent.temp
            )));
        }
    }
    Ok(gamma)
}

/// The socle datum of ν^xρ ⋊ parent, before certification. Rules, in
/// priority order: the reducibility-point merge on half-integer lines,
/// tempered extension of the label, then a fresh Langlands segment.
pub fn extend_datum(
    lines: &Lines,
    line: LineId,
    x: HalfInt,
    parent: &LanglandsDatum,
) -> Result<LanglandsDatum> {
    let alpha = lines.get(line).alpha;

    // ν^{1/2}ρ against an existing [1/2] segment on an α = 1/2 line closes
    // up into the minus piece of the two-sided square.
    if alpha == HalfInt::halves(1)
        && x == HalfInt::halves(1)
        && parent.temp == TemperedSymbol::Cusp
    {
        let half = Segment::point(line, HalfInt::halves(1));
        if let Some(shrunk) = parent.without_seg(&half) {
            let sq = Segment::new(line, HalfInt::halves(-1), HalfInt::halves(1));
            return Ok(shrunk.with_temp(TemperedSymbol::PMSquare { seg: sq, sign: Sign::Minus }));
        }
    }

    if x.is_positive() {
        if let Some(t) = extend_temp(alpha, line, x, &parent.temp) {
            return Ok(parent.with_temp(t));
        }
    }
    if x == HalfInt::ZERO {
        return Err(Error::NoExtensionRule { exp: x.to_string(), parent: parent.to_string() });
    }
    parent.with_seg(Segment::point(line, x.abs()))
}

/// Tempered extension of a label by ν^xρ, if one of the chain rules
/// applies.
fn extend_temp(
    alpha: HalfInt,
    line: LineId,
    x: HalfInt,
    temp: &TemperedSymbol,
) -> Option<TemperedSymbol> {
    match temp {
        TemperedSymbol::Cusp => {
            if alpha.is_positive() && x == alpha {
                Some(TemperedSymbol::GenSteinberg { seg: Segment::point(line, alpha) })
            } else {
                None
            }
        }
        TemperedSymbol::GenSteinberg { seg } if seg.line == line => {
            if x == seg.y + 1 {
                Some(TemperedSymbol::GenSteinberg { seg: Segment::new(line, seg.x, x) })
            } else if x + 1 == seg.x {
                // a new strongly positive rung below the chain
                Some(TemperedSymbol::StronglyPositive {
                    rungs: vec![Segment::point(line, x), *seg],
                })
            } else {
                None
            }
        }
        TemperedSymbol::StronglyPositive { rungs } if rungs[0].line == line => {
            // extend the topmost rung whose end is x − 1, keeping nesting
            for (j, r) in rungs.iter().enumerate().rev() {
                if x == r.y + 1 {
                    let grown = Segment::new(line, r.x, x);
                    if j + 1 < rungs.len() && grown.y + 1 > rungs[j + 1].y {
                        continue;
                    }
                    let mut v = rungs.clone();
                    v[j] = grown;
                    return Some(TemperedSymbol::StronglyPositive { rungs: v });
                }
            }
            if x + 1 == rungs[0].x {
                let mut v = rungs.clone();
                v.insert(0, Segment::point(line, x));
                return Some(TemperedSymbol::StronglyPositive { rungs: v });
            }
            None
        }
        TemperedSymbol::PMSquare { seg, sign } if seg.line == line => {
            if x == seg.y + 1 {
                Some(TemperedSymbol::PMSquare {
                    seg: Segment::new(line, seg.x, x),
                    sign: *sign,
                })
            } else {
                None
            }
        }
        TemperedSymbol::PMZeroChain { line: l, n, sign } if *l == line => {
            if x == HalfInt::int(n + 1) {
                Some(TemperedSymbol::PMZeroChain { line: *l, n: n + 1, sign: *sign })
            } else {
                None
            }
        }
        TemperedSymbol::TauPM { sign, seg } if seg.line == line => {
            if x == seg.y + 1 {
                Some(TemperedSymbol::TauPM { sign: *sign, seg: Segment::new(line, seg.x, x) })
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Certifies that `candidate` is the unique irreducible subrepresentation
/// of ν^xρ ⋊ parent.
pub fn socle_of(
    lines: &Lines,
    line: LineId,
    x: HalfInt,
    parent: &LanglandsDatum,
    candidate: &LanglandsDatum,
) -> Result<SocleCertificate> {
    let expected = extend_datum(lines, line, x, parent)?;
    if &expected != candidate {
        return Err(Error::CertificateFailure(format!(
            "socle of [{x}] over {parent} is {expected}, not {candidate}"
        )));
    }
    let gamma = certify_gamma(line, x, parent)?;
    Ok(SocleCertificate {
        x,
        line,
        parent: parent.clone(),
        candidate: candidate.clone(),
        gamma_word: gamma,
        leading_string: candidate.leading_string().unwrap_or_else(|_| ExpString::empty()),
        mult: 1,
    })
}

/// Certified extension: the socle datum together with its certificate.
pub fn extend_certified(
    lines: &Lines,
    line: LineId,
    x: HalfInt,
    parent: &LanglandsDatum,
) -> Result<(LanglandsDatum, SocleCertificate)> {
    let d = extend_datum(lines, line, x, parent)?;
    let cert = socle_of(lines, line, x, parent, &d)?;
    Ok((d, cert))
}

/// Candidate parents p with a certified step p ↪ \[x\] ⋊ p, i.e. the inverse
/// images of `extend_datum` at exponent x.
fn unextend_candidates(
    lines: &Lines,
    line: LineId,
    x: HalfInt,
    d: &LanglandsDatum,
) -> Vec<LanglandsDatum> {
    let mut out = Vec::new();
    // remove a one-point segment [|x|]
    if x != HalfInt::ZERO {
        if let Some(p) = d.without_seg(&Segment::point(line, x.abs())) {
            out.push(p);
        }
    }
    // shrink the tempered label
    if x.is_positive() {
        for t in untemper(line, x, &d.temp) {
            out.push(d.with_temp(t));
        }
    }
    // reopen the half-integer merge
    let alpha = lines.get(line).alpha;
    if alpha == HalfInt::halves(1) && x == HalfInt::halves(1) {
        if let TemperedSymbol::PMSquare { seg, sign: Sign::Minus } = &d.temp {
            if -seg.x == HalfInt::halves(1) && seg.y == HalfInt::halves(1) {
                if let Ok(p) = d
                    .with_temp(TemperedSymbol::Cusp)
                    .with_seg(Segment::point(line, HalfInt::halves(1)))
                {
                    out.push(p);
                }
            }
        }
    }
    out.retain(|p| extend_datum(lines, line, x, p).map(|e| &e == d).unwrap_or(false));
    out
}

fn untemper(line: LineId, x: HalfInt, temp: &TemperedSymbol) -> Vec<TemperedSymbol> {
    let mut out = Vec::new();
    match temp {
        TemperedSymbol::GenSteinberg { seg } if seg.line == line && seg.y == x => {
            if seg.len() == 1 {
                out.push(TemperedSymbol::Cusp);
            } else {
                out.push(TemperedSymbol::GenSteinberg {
                    seg: Segment::new(line, seg.x, seg.y - 1),
                });
            }
        }
        TemperedSymbol::StronglyPositive { rungs } if rungs[0].line == line => {
            for (j, r) in rungs.iter().enumerate() {
                if r.y == x {
                    let mut v = rungs.clone();
                    if r.len() == 1 {
                        v.remove(j);
                    } else {
                        v[j] = Segment::new(line, r.x, r.y - 1);
                    }
                    out.push(if v.len() == 1 && v[0].x == rungs.last().unwrap().x {
                        TemperedSymbol::GenSteinberg { seg: v[0] }
                    } else if v.is_empty() {
                        TemperedSymbol::Cusp
                    } else {
                        TemperedSymbol::StronglyPositive { rungs: v }
                    });
                }
            }
        }
        TemperedSymbol::PMSquare { seg, sign } if seg.line == line && seg.y == x => {
            if -seg.x < seg.y {
                out.push(TemperedSymbol::PMSquare {
                    seg: Segment::new(line, seg.x, seg.y - 1),
                    sign: *sign,
                });
            }
        }
        TemperedSymbol::PMZeroChain { line: l, n, sign } if *l == line => {
            if x == HalfInt::int(*n) && *n >= 1 {
                out.push(TemperedSymbol::PMZeroChain { line: *l, n: n - 1, sign: *sign });
            }
        }
        TemperedSymbol::TauPM { sign, seg }
            if seg.line == line && seg.y == x && seg.len() > 1 =>
        {
            out.push(TemperedSymbol::TauPM {
                sign: *sign,
                seg: Segment::new(line, seg.x, seg.y - 1),
            });
        }
        _ => {}
    }
    out
}

/// The exponents that can start a cuspidal string of the full envelope of
/// an induced expression over σ.
fn envelope_first_letters(e: &InducedExpr) -> Vec<(LineId, HalfInt)> {
    let mut heads = Vec::new();
    for g in e.gl.factors() {
        let seg = g.seg;
        match g.kind {
            crate::word::GenKind::Delta => {
                heads.push((seg.line, seg.y));
                heads.push((seg.line, -seg.x));
            }
            crate::word::GenKind::Zeta => {
                heads.push((seg.line, seg.x));
                heads.push((seg.line, -seg.y));
            }
        }
    }
    heads.sort();
    heads.dedup();
    heads
}

/// Jac at one exponent of a datum constructed by this library.
///
/// Decided cases: the datum un-extends at x with a certificate (result is
/// the certified parent with coefficient one), or no envelope string can
/// begin with x (result zero). Everything else is `Undecidable`.
pub fn jac(lines: &Lines, line: LineId, x: HalfInt, d: &LanglandsDatum) -> Result<JacResult> {
    for p in unextend_candidates(lines, line, x, d) {
        if socle_of(lines, line, x, &p, d).is_ok() {
            return Ok(JacResult::single(p));
        }
    }
    let env = d.full_envelope()?;
    if !envelope_first_letters(&env).contains(&(line, x)) {
        return Ok(JacResult::zero());
    }
    Ok(JacResult::Undecidable)
}

/// Iterates `jac` at a fixed exponent until it vanishes: the leading
/// exponent multiplicity f and the residual datum θ.
pub fn leading_jacquet(
    lines: &Lines,
    line: LineId,
    x: HalfInt,
    d: &LanglandsDatum,
) -> Result<(i64, LanglandsDatum)> {
    if x == HalfInt::ZERO {
        // uniqueness of the residual fails for the selfdual point
        return Err(Error::Undecidable("exponent 0".into()));
    }
    let mut current = d.clone();
    let mut count = 0;
    loop {
        match jac(lines, line, x, &current)? {
            JacResult::Sum(s) if s.is_zero() => return Ok((count, current)),
            JacResult::Sum(s) => {
                let (next, c) = s.iter().next().map(|(b, c)| (b.clone(), c)).unwrap();
                debug_assert_eq!(c, 1);
                debug_assert_eq!(s.len(), 1);
                current = next;
                count += 1;
            }
            JacResult::Undecidable => return Err(Error::Undecidable(format!("Jac_{x} of {current}"))),
        }
    }
}

/// Strips one leading letter at (line, x) from every string of an
/// expansion.
pub fn strip_letter(
    sum: &FormalSum<ExpString>,
    line: LineId,
    x: HalfInt,
) -> FormalSum<ExpString> {
    let mut out = FormalSum::zero();
    for (s, c) in sum.iter() {
        if s.head() == Some((line, x)) {
            out.add_term(s.tail(), c);
        }
    }
    out
}

/// Checks that Jac at two non-adjacent exponents commutes on the full
/// expansion of an induced expression.
pub fn jac_commute_check(
    e: &InducedExpr,
    line: LineId,
    x: HalfInt,
    y: HalfInt,
) -> Result<bool> {
    if (x - y).abs() == HalfInt::int(1) {
        return Err(Error::InvalidParam(format!(
            "exponents {x} and {y} are adjacent; the operators need not commute"
        )));
    }
    if e.base != ExprBase::Sigma {
        return Err(Error::UnsupportedSymbol("commutation check runs over sigma".into()));
    }
    let full = crate::classical::mu_star_cuspidal(e)?;
    let xy = strip_letter(&strip_letter(&full, line, x), line, y);
    let yx = strip_letter(&strip_letter(&full, line, y), line, x);
    Ok(xy == yx)
}
