use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("base exponent 0 makes the dilogarithm undefined")]
    DegenerateBase,
    #[error("numeric q must be nonzero with |q| != 1, got {0}")]
    InvalidQ(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not a single monomial")]
    NotMonomial,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("series argument must have grading degree >= 1, got {0}")]
    DegreeTooLow(i64),
    #[error("truncated product needs nonnegative grading degrees")]
    NegativeDegree,
    #[error("an infinite series needs a finite truncation order")]
    NeedsTruncation,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("automorphism images violate the commutation relations at ({0}, {1})")]
    RelationViolated(usize, usize),
    #[error("negative exponent on non-invertible generator {0}")]
    NonLaurent(String),
}
