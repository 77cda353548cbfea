use alloc::string::String;

/// Errors raised by the exact-arithmetic routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a zero denominator")]
    ZeroDenominator,
    #[error("genuine pole at 0")]
    PoleAtZero,
    #[error("exponent arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("invalid shape (k={k}, n={n}): {reason}")]
    InvalidShape { k: u32, n: u32, reason: String },
    #[error("invalid box (col={col}, row={row}) for shape (k={k}, n={n})")]
    InvalidBox { k: u32, n: u32, col: u32, row: u32 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("singular parameters: {0}")]
    Singular(String),
    #[error("degenerate point set: affine rank {rank} < dimension {dim}")]
    Degenerate { rank: usize, dim: usize },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
