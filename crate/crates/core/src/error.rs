use thiserror::Error;

/// Errors raised by the ring, matrix and operator kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: nonzero remainder")]
    NotDivisible,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("the zero operator has no principal symbol")]
    ZeroOperator,
    #[error("a linear form must have a nonzero coefficient")]
    ZeroLinearForm,
}
