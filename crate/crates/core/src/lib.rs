//! Exact symbolic calculus for representations of split classical p-adic
//! groups: the segment ring of general linear groups with its twisted
//! comultiplications, Jacquet-module multiplicity certificates,
//! Jordan-block parameters with component-group characters, the reduction
//! recursion producing Langlands data, duality on parameters, and a
//! verified catalog of unitarizable subquotients at critical points.
//!
//! Everything is computed over ℤ with half-integer exponents; there is no
//! floating point and no randomness in any code path that produces a
//! result. All values are immutable and the API is safe to use from
//! multiple threads.
//!
//! ```
//! use apackets::arthur::{moeglin_rep, SigmaBase};
//! use apackets::classical::Sign;
//! use apackets::families::{family_datum, packet_gt1, FamilyCase};
//! use apackets::HalfInt;
//!
//! // the base forced by reducibility 5/2, with the pair of blocks
//! // (8,1), (1,6) over it
//! let base = SigmaBase::minimal(HalfInt::halves(5), Sign::Plus)?;
//! let pair = packet_gt1(&base, 0, 1)?;
//!
//! // resolving the pair and the closed form name the same representation
//! let trace = moeglin_rep(&base, &pair)?;
//! assert_eq!(trace.result, family_datum(&base, &FamilyCase::RedGt1 { m: 0, n: 1 })?);
//! assert!(trace.certificates().all(|c| c.mult == 1));
//! # Ok::<(), apackets::Error>(())
//! ```

pub mod error;
pub mod half;
pub mod line;
pub mod segment;
pub mod formal;
pub mod word;
pub mod exps;
pub mod hopf;
pub mod classical;
pub mod socle;
pub mod arthur;
pub mod families;
pub mod critical;
pub mod config;

pub use error::{Error, Result};
pub use half::HalfInt;
pub use line::{CuspLine, LineId, Lines, Parity};
pub use segment::Segment;
pub use formal::FormalSum;
pub use word::{GLGen, GLWord, GenKind};
pub use exps::ExpString;
