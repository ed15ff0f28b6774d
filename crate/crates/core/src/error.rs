use std::fmt;

use thiserror::Error;

/// Why a move was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    /// A pile at the source position lies in the beta-Beatty set, so only
    /// single-pile moves are allowed.
    RestrictionActive,
    /// The move would take more tokens than a pile holds.
    OutOfBounds,
    /// The two removal amounts differ by `k` or more.
    DiagonalWidth,
    /// A removal amount is zero.
    ZeroAmount,
}

impl IllegalReason {
    pub fn as_str(self) -> &'static str {
        match self {
            IllegalReason::RestrictionActive => "restriction-active",
            IllegalReason::OutOfBounds => "out-of-bounds",
            IllegalReason::DiagonalWidth => "diagonal-width",
            IllegalReason::ZeroAmount => "zero-amount",
        }
    }
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("beta out of range: {0}")]
    BetaOutOfRange(String),

    #[error("not irrational: {0}")]
    NotIrrational(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("illegal move: {0}")]
    IllegalMove(IllegalReason),

    #[error("position ({x}, {y}) outside grid 0..={n_max}")]
    OutOfBounds { x: u64, y: u64, n_max: u64 },

    #[error("capacity exceeded: n_max {requested} > limit {limit}")]
    CapacityExceeded { requested: u64, limit: u64 },

    #[error("operation requires variant rules")]
    NotVariant,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Stable error code, shared by the CLI diagnostics and the HTTP service.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::BetaOutOfRange(_) => "BetaOutOfRange",
            Error::NotIrrational(_) => "NotIrrational",
            Error::Parse { .. } => "ParseError",
            Error::IllegalMove(_) => "IllegalMove",
            Error::OutOfBounds { .. } => "OutOfBounds",
            Error::CapacityExceeded { .. } => "CapacityExceeded",
            Error::NotVariant => "NotVariant",
            Error::Overflow(_) => "Overflow",
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
