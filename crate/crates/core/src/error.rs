use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("family `{0}` is dense and has no generating sequence")]
    NotSequenceGenerated(String),
    #[error("{0} is not a member of the monoid")]
    NotAMember(String),
    #[error("unbounded query: {0}")]
    UnboundedQuery(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("completeness certificate unavailable: {0}")]
    CertificateUnavailable(String),
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,
    #[error("arithmetic overflow in scalar type `{0}`")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
