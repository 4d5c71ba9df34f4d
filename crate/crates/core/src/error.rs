//! Error taxonomy shared by every module of the crate.
//!
//! The variants are a stable contract: the CLI maps each kind to a fixed
//! exit code, and `kind()` names are emitted verbatim in job reports.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values from different cyclotomic fields were combined without an
    /// explicit conductor lift.
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },

    /// A conductor lift was requested to a target the source does not divide.
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },

    /// Division by the zero element of the field.
    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u64 },

    /// Matrix dimensions do not admit the requested operation.
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// A square matrix was required.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// The matrix has no inverse.
    #[error("matrix is singular")]
    Singular,

    /// Group closure exceeded the configured element cap.
    #[error("group closure exceeded cap {cap} (image too large or infinite)")]
    ClosureCapExceeded { cap: usize },

    /// The character inner product [chi,chi] is not 1.
    #[error("representation is not irreducible: [chi,chi] = {inner}")]
    NotIrreducible { inner: String },

    /// The character is not real-valued (indicator 0): no invariant bilinear
    /// form exists and no real realization is possible.
    #[error("character is not real-valued (indicator 0)")]
    NotRealValued,

    /// The character is real-valued but of quaternionic type (indicator -1):
    /// not afforded by any real representation.
    #[error("representation is of quaternionic type (indicator -1)")]
    QuaternionicType,

    /// The computed intertwiner failed its defining relation; signals an
    /// upstream bug, never expected on valid input.
    #[error("intertwiner check failed: P rho(g) != conj(rho(g)) P for generator {generator}")]
    IntertwinerCheckFailed { generator: usize },

    /// P * conj(P) is not a scalar matrix; upstream bug.
    #[error("P * conj(P) is not scalar")]
    NotScalar,

    /// The scalar mu is not fixed by conjugation; upstream bug.
    #[error("mu is not real: {mu}")]
    MuNotReal { mu: String },

    /// The norm-equation search cascade was exhausted. This is a solver
    /// limitation, not a proof of unsolvability: pipeline inputs always
    /// admit a solution in the ambient field.
    #[error("norm equation x*conj(x) = {mu} not solved in Q(zeta_{conductor}) within bound {bound}")]
    NormEquationNotSolved {
        mu: String,
        conductor: u64,
        bound: u32,
    },

    /// The xi candidate generator ran out before producing enough distinct
    /// ratios; cannot happen for conductor >= 3.
    #[error("xi search exhausted after {attempts} candidates")]
    XiSearchExhausted { attempts: u32 },

    /// A named fixture does not exist or its parameters are invalid.
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),

    /// Input text could not be parsed into a well-formed object.
    #[error("parse error: {0}")]
    ParseError(String),

    /// An exact runtime re-check of a proved identity failed; always a bug.
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// Stable kind name, mirrored verbatim by the CLI job report.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConductorMismatch { .. } => "ConductorMismatch",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::DivisionByZero { .. } => "DivisionByZero",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::Singular => "Singular",
            Error::ClosureCapExceeded { .. } => "ClosureCapExceeded",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::NotRealValued => "NotRealValued",
            Error::QuaternionicType => "QuaternionicType",
            Error::IntertwinerCheckFailed { .. } => "IntertwinerCheckFailed",
            Error::NotScalar => "NotScalar",
            Error::MuNotReal { .. } => "MuNotReal",
            Error::NormEquationNotSolved { .. } => "NormEquationNotSolved",
            Error::XiSearchExhausted { .. } => "XiSearchExhausted",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::ParseError(_) => "ParseError",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
