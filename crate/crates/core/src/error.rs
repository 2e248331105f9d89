//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
///
/// `TheoremFalsified` is special: it is returned when an exhaustive check
/// finds a counterexample to a property the library otherwise relies on.
/// Callers (in particular the CLI) are expected to surface it loudly rather
/// than swallow it.
#[derive(Debug, Error)]
pub enum Error {
    /// A sequence of parts was not a valid partition (zero or increasing parts).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// Two partitions that must partition the same integer do not.
    #[error("mismatched totals: |{0}| = {1} but |{2}| = {3}")]
    MismatchedTotals(String, u64, String, u64),

    /// A decorated partition violated the decoration rules.
    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),

    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A configured enumeration bound would be exceeded.
    #[error("bound exceeded: {what} needs {needed} but the bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u64,
        bound: u64,
    },

    /// A finite field of the requested size cannot be built.
    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    /// An operation needed an invertible matrix and got a singular one.
    #[error("singular matrix in {0}")]
    SingularMatrix(&'static str),

    /// A map that must be unipotent (all eigenvalues 1) is not.
    #[error("matrix is not unipotent: {0}")]
    NotUnipotent(String),

    /// The operation is only defined under different field / degree semantics.
    #[error("incompatible semantics: {0}")]
    Incompatible(String),

    /// An exhaustive check found a counterexample to a claimed property.
    #[error("theorem check falsified: {0}")]
    TheoremFalsified(String),

    /// A required normalization scalar has no root in the working field.
    #[error("no normalization root: {0}")]
    NoNormalizationRoot(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
