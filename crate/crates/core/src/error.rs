//! Error type shared by every module of the engine.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while computing with a germ.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed scalar, e.g. a rational with zero denominator.
    #[error("malformed scalar: {0}")]
    MalformedScalar(String),
    /// Division of a field element by zero.
    #[error("division by zero")]
    DivisionByZero,
    /// Two field elements of different kinds were combined by a strict operation.
    #[error("scalar kind mismatch: {0}")]
    TypeMismatch(String),
    /// Evaluation of a parametric quantity hit a pole.
    #[error("parameter value {value} is not generic: {detail}")]
    Specialization { value: String, detail: String },
    /// Syntax or validation error in textual input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// The input germ is smooth at the origin or does not vanish there.
    #[error("input is not singular at the origin: {0}")]
    NonSingular(String),
    /// The singularity (or an ideal that should be zero-dimensional) is not isolated.
    #[error("singularity is not isolated: {0}")]
    NonIsolated(String),
    /// The chosen coordinates fail a genericity requirement.
    #[error("coordinates are not generic: {0}")]
    NonGenericCoordinate(String),
    /// A documented mathematical precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// `f²` is not in the ideal of degree-2 products of `f` and its partials.
    #[error("f^2 has no integral dependence relation of degree 2: {0}")]
    NotIntegralDegreeTwo(String),
    /// Independently computed invariants disagree.
    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),
    /// An iteration did not stabilise below its safety bound.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    /// A certificate or identity that must hold failed to verify.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl Error {
    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Stable machine-readable code reported by the command line tool.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::MalformedScalar(_) => "E_PARSE",
            Error::NonSingular(_) => "E_NONSINGULAR",
            Error::NonIsolated(_) => "E_NONISOLATED",
            Error::NonGenericCoordinate(_) => "E_NONGENERIC_COORD",
            Error::Specialization { .. } => "E_SPECIALIZATION",
            Error::Precondition(_) | Error::NotIntegralDegreeTwo(_) => "E_PRECONDITION",
            Error::DivisionByZero
            | Error::TypeMismatch(_)
            | Error::InconsistentInvariants(_)
            | Error::BoundExceeded(_)
            | Error::InternalInvariant(_) => "E_INTERNAL_INVARIANT",
        }
    }

    /// Process exit code: 2 input error, 3 mathematical precondition, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self.code() {
            "E_PARSE" => 2,
            "E_INTERNAL_INVARIANT" => 4,
            _ => 3,
        }
    }
}
