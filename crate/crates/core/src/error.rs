//! Error type shared by every module.
//!
//! All failures are loud: arithmetic that would silently lose meaning
//! (inverting a non-unit, composing series with a constant term, mixing
//! precision contexts) returns one of these variants instead.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Element has no inverse in its ring context.
    #[error("not a unit: {0}")]
    NotAUnit(String),
    /// Two operands live in different ring contexts (precision, cap, or variable count).
    #[error("mismatched precision contexts: {0}")]
    MismatchedPrecision(String),
    /// A 2-adic computation ran out of tracked precision.
    #[error("2-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// Substitution target must have zero constant term.
    #[error("nonzero constant term: {0}")]
    NonzeroConstantTerm(String),
    /// Series reversal needs valuation exactly 1 with a unit linear coefficient.
    #[error("series not reversible: {0}")]
    NotReversible(String),
    /// Leading coefficient does not have the required shape.
    #[error("bad leading term: {0}")]
    BadLeadingTerm(String),
    /// Square roots by Newton iteration need 2 invertible.
    #[error("2 is not invertible in this ring")]
    TwoNotInvertible,
    /// The degree-by-degree isomorphism system is inconsistent.
    #[error("not isomorphic: inconsistent at degree {degree}: {detail}")]
    NotIsomorphic { degree: u32, detail: String },
    /// The degree-by-degree isomorphism system is underdetermined.
    #[error("strict isomorphism underdetermined at degree {degree}")]
    AmbiguousSolution { degree: u32 },
    /// A point map on the curve fails additivity or bijectivity.
    #[error("not a group automorphism: {0}")]
    NotGroupAutomorphism(String),
    /// An exponent that must be 2-adically invertible is even.
    #[error("exponent is not odd: {0}")]
    NotOdd(String),
    /// A unit normalization (constant term 1) is impossible.
    #[error("not normalizable: {0}")]
    NotNormalizable(String),
    /// The check registry has no entry under this id.
    #[error("unknown check id: {0}")]
    UnknownCheckId(String),
    /// Bad CLI flag combination or config file entry.
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
