use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("ambient mismatch: O_q(M_{{{0},{1}}}) vs O_q(M_{{{2},{3}}})")]
    AmbientMismatch(usize, usize, usize, usize),
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("element is not homogeneous: words {0} and {1} have different content")]
    Inhomogeneous(String, String),
    #[error("wrong cardinality: expected {expected}, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("elements do not quasi-commute; residual: {0}")]
    NotQuasiCommuting(String),
    #[error("precondition violated: {0}")]
    PrereqViolation(String),
    #[error("localisation centers differ: M_{0} vs M_{1}")]
    CenterMismatch(usize, usize),
    #[error("content vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("twisted elements come from different models")]
    ModelMismatch,
    #[error("combination does not vanish; residual: {0}")]
    NotARelation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
