//! Run-time configuration: the cuspidal lines, the base parameter of σ,
//! and reporting options. Loaded from JSON, validated on construction.

use crate::arthur::{AParam, EpsChar, JordanBlock, SigmaBase};
use crate::classical::Sign;
use crate::half::HalfInt;
use crate::line::{CuspLine, Lines};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineSpec {
    pub name: String,
    /// "5/2", "2.5" or "3".
    pub alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_hint: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockSpec {
    pub line: String,
    pub a: i64,
    pub b: i64,
    /// +1 or −1.
    pub eps: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Options {
    /// Record rather than reject a base character whose product is −1.
    #[serde(default = "default_true")]
    pub allow_eps_product_override: bool,
    #[serde(default = "default_bound")]
    pub letter_bound: i64,
    #[serde(default)]
    pub format: Format,
}

fn default_true() -> bool {
    true
}

fn default_bound() -> i64 {
    crate::hopf::LETTER_BOUND
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            allow_eps_product_override: true,
            letter_bound: default_bound(),
            format: Format::Text,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    pub lines: Vec<LineSpec>,
    /// Explicit base blocks; when absent the forced minimal chain of the
    /// first line is used with a `+` anchor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<BlockSpec>>,
    #[serde(default)]
    pub options: Options,
}

impl Config {
    /// The single-line configuration at a given α.
    pub fn minimal(alpha: HalfInt, anchor: Sign) -> Config {
        let base = SigmaBase::minimal(alpha, anchor).expect("alpha >= 0");
        let blocks = base
            .psi
            .blocks()
            .iter()
            .map(|b| BlockSpec {
                line: "rho".into(),
                a: b.a,
                b: b.b,
                eps: base.eps.get(b).map(Sign::val).unwrap_or(1),
            })
            .collect();
        Config {
            lines: vec![LineSpec { name: "rho".into(), alpha: alpha.to_string(), dim_hint: None }],
            base: Some(blocks),
            options: Options::default(),
        }
    }

    pub fn parse_json(text: &str) -> Result<Config> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad configuration: {e}")))
    }

    /// Validates and builds the σ base this configuration describes.
    pub fn to_base(&self) -> Result<SigmaBase> {
        if self.lines.is_empty() {
            return Err(Error::Config("at least one cuspidal line is required".into()));
        }
        let mut lines = Lines::new();
        for spec in &self.lines {
            let alpha = HalfInt::parse(&spec.alpha)
                .ok_or_else(|| Error::Config(format!("bad alpha {:?}", spec.alpha)))?;
            let mut line = CuspLine::with_alpha(&spec.name, alpha)?;
            line.dim_hint = spec.dim_hint;
            lines.push(line);
        }
        let base = match &self.base {
            None => {
                let alpha = lines.get(crate::line::LineId(0)).alpha;
                SigmaBase::minimal(alpha, Sign::Plus)?
            }
            Some(blocks) => {
                let mut psi = AParam::default();
                let mut eps = EpsChar::new();
                for spec in blocks {
                    let line = lines.by_name(&spec.line).ok_or_else(|| {
                        Error::Config(format!("unknown line {:?}", spec.line))
                    })?;
                    if spec.a < 1 || spec.b < 1 {
                        return Err(Error::Config(format!(
                            "bad block ({}, {})",
                            spec.a, spec.b
                        )));
                    }
                    let blk = JordanBlock::new(line, spec.a, spec.b);
                    psi = psi.with_block(blk);
                    eps.set(
                        blk,
                        match spec.eps {
                            1 => Sign::Plus,
                            -1 => Sign::Minus,
                            v => {
                                return Err(Error::Config(format!("bad sign {v}")))
                            }
                        },
                    );
                }
                let product_override = eps.product(&psi) != 1;
                let base = SigmaBase { lines, psi, eps, product_override };
                base.validate()?;
                base
            }
        };
        if base.product_override && !self.options.allow_eps_product_override {
            return Err(Error::Config(
                "base character product is -1 and the override is disabled".into(),
            ));
        }
        Ok(base)
    }
}
