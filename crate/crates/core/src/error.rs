use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: conductor {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("zero element has no multiplicative order")]
    ZeroElement,
    #[error("index {index} out of range 0..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("chi(a) = 1 is not allowed")]
    ChiAEqualsOne,
    #[error("unsupported regime: |chi| = {chi_order} but |chi(a)| = {chi_a_order}")]
    UnsupportedRegime { chi_order: String, chi_a_order: String },
    #[error("field Q(zeta_{conductor}) cannot represent {what}")]
    FieldTooSmall { conductor: u64, what: String },
    #[error("operation requires a finite-order regime")]
    InfiniteRegime,
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("invalid context field `{field}`: {msg}")]
    InvalidContext { field: String, msg: String },
    #[error("internal dimension mismatch: expected {expected}, got {got}")]
    InternalDimensionMismatch { expected: usize, got: usize },
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not invariant under the given map")]
    NotInvariant,
    #[error("modules belong to different contexts")]
    ContextMismatch,
    #[error("x^s has eigenvalues outside the candidate set on the weight space {weight}: {missing} dimensions unaccounted")]
    EigenvalueOutsideCandidates { weight: String, missing: usize },
    #[error("x does not act nilpotently where nilpotency was required")]
    NotNilpotent,
    #[error("oracle consistency check failed: {0}")]
    OracleInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
