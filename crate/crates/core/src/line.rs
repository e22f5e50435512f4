//! Cuspidal lines: a selfcontragredient unitary cuspidal ρ of a general
//! linear group together with its reducibility exponent α against the
//! fixed cuspidal σ of the classical side.

use crate::half::HalfInt;
use crate::Error;
use serde::{Deserialize, Serialize};

/// Index of a cuspidal line inside a \[`Lines`\] registry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineId(pub u32);

/// Parity of the block sizes occurring in the diagonal restriction on this
/// line. Derived from α: the chain anchored at 2α−1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Metadata for one cuspidal line ρ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspLine {
    pub name: String,
    /// Reducibility exponent α = α_{ρ,σ} ∈ ½ℤ≥0.
    pub alpha: HalfInt,
    pub parity: Parity,
    /// Optional dimension n_ρ of the general linear group carrying ρ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_hint: Option<u32>,
}

impl CuspLine {
    /// Builds the line for a given α, deriving the parity of 2α−1.
    pub fn with_alpha(name: &str, alpha: HalfInt) -> Result<Self, Error> {
        if alpha.is_negative() {
            return Err(Error::InvalidLine(format!("alpha {alpha} must be >= 0")));
        }
        let parity = parity_for_alpha(alpha);
        Ok(CuspLine { name: name.to_string(), alpha, parity, dim_hint: None })
    }

    /// Checks the coupling between α and the stored parity.
    pub fn validate(&self) -> Result<(), Error> {
        if self.alpha.is_negative() {
            return Err(Error::InvalidLine(format!("alpha {} must be >= 0", self.alpha)));
        }
        if self.parity != parity_for_alpha(self.alpha) {
            return Err(Error::InvalidLine(format!(
                "line {}: parity {:?} inconsistent with alpha {}",
                self.name, self.parity, self.alpha
            )));
        }
        Ok(())
    }
}

/// Parity of 2α−1; even lines carry half-integral α.
pub fn parity_for_alpha(alpha: HalfInt) -> Parity {
    if alpha.is_integer() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Registry of the cuspidal lines in play. Most computations use one line.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Lines {
    lines: Vec<CuspLine>,
}

impl Lines {
    pub fn new() -> Self {
        Lines { lines: Vec::new() }
    }

    /// One-line registry, the usual working context.
    pub fn single(name: &str, alpha: HalfInt) -> (Self, LineId) {
        let mut ls = Lines::new();
        let id = ls.push(CuspLine::with_alpha(name, alpha).expect("alpha >= 0"));
        (ls, id)
    }

    pub fn push(&mut self, line: CuspLine) -> LineId {
        let id = LineId(self.lines.len() as u32);
        self.lines.push(line);
        id
    }

    pub fn get(&self, id: LineId) -> &CuspLine {
        &self.lines[id.0 as usize]
    }

    pub fn by_name(&self, name: &str) -> Option<LineId> {
        self.lines.iter().position(|l| l.name == name).map(|i| LineId(i as u32))
    }

    pub fn ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.lines.len() as u32).map(LineId)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn validate(&self) -> Result<(), Error> {
        for l in &self.lines {
            l.validate()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_follows_alpha() {
        assert_eq!(parity_for_alpha(HalfInt::int(0)), Parity::Odd);
        assert_eq!(parity_for_alpha(HalfInt::int(1)), Parity::Odd);
        assert_eq!(parity_for_alpha(HalfInt::halves(1)), Parity::Even);
        assert_eq!(parity_for_alpha(HalfInt::halves(3)), Parity::Even);
        assert_eq!(parity_for_alpha(HalfInt::halves(5)), Parity::Even);
    }

    #[test]
    fn registry_roundtrip() {
        let (ls, id) = Lines::single("rho", HalfInt::halves(5));
        assert_eq!(ls.get(id).name, "rho");
        assert_eq!(ls.by_name("rho"), Some(id));
        assert!(ls.by_name("tau").is_none());
        ls.validate().unwrap();
    }
}
