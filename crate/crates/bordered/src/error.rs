use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure error: {0}")]
    Structure(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("module is not bounded: {0}")]
    NonBoundedModule(String),
    #[error("pairing does not terminate: {0}")]
    NonTerminating(String),
    #[error("invalid framing: {0}")]
    InvalidFraming(String),
    #[error("not an L-space knot Alexander polynomial: {0}")]
    NotLSpaceKnotForm(String),
    #[error("idempotent mismatch: {0}")]
    IdempotentMismatch(String),
    #[error("characterization failed: {0}")]
    NotFound(String),
    #[error("characterization is not unique: {0}")]
    NotUnique(String),
    #[error("path is not in solid-torus form: {0}")]
    BadForm(String),
    #[error("curve is not distinguished: {0}")]
    NotDistinguished(String),
    #[error("mark `{0}` is not on the curve")]
    BadMark(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("local system required: {0}")]
    LocalSystemRequired(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
