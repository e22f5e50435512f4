use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cuspidal line: {0}")]
    InvalidLine(String),

    #[error("word exceeds the cuspidal-letter bound ({letters} > {bound})")]
    WordTooLarge { letters: i64, bound: i64 },

    #[error("leading term has multiplicity {0}, not 1")]
    MultiplicityNotOne(i64),

    #[error("cannot certify multiplicity one: {0}")]
    CertificateLeak(String),

    #[error("unsupported tempered symbol for this operation: {0}")]
    UnsupportedSymbol(String),

    #[error("no socle extension rule applies: exponent {exp} over {parent}")]
    NoExtensionRule { exp: String, parent: String },

    #[error("parity mismatch deforming ({a},{b}) to ({a2},{b2})")]
    DeformParity { a: i64, b: i64, a2: i64, b2: i64 },

    #[error("deformation target ({a},{b}) already present")]
    DeformCollision { a: i64, b: i64 },

    #[error("block ({a},{b}) not present in the parameter")]
    BlockMissing { a: i64, b: i64 },

    #[error("boundary case on line {line}: a = b + 2 with b = {b} > 0")]
    BoundaryCase { line: String, b: i64 },

    #[error("nothing to reduce on line {0}: every block sits in the cuspidal chain")]
    NothingToReduce(String),

    #[error("reduction bottomed at a parameter not matching the base: {0}")]
    BaseMismatch(String),

    #[error("socle certificate failed during reduction: {0}")]
    CertificateFailure(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("invalid character of the component group: {0}")]
    InvalidEps(String),

    #[error("jac result undecidable for exponent {0}")]
    Undecidable(String),

    #[error("domination shift not realisable by unit rows: {0}")]
    UnsupportedShift(String),

    #[error("family case out of range: {0}")]
    FamilyRange(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
