use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{value} is not a unit modulo {p}")]
    UnitRequired { value: u64, p: u64 },

    #[error("precision exhausted: need {needed} trusted p-digits, have {available}")]
    PrecisionExhausted { needed: u32, available: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("pair is not of a realizable shape: {0}")]
    NotRealizableShape(String),

    #[error("module is not finite: {0}")]
    NotFinite(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("vector is not admissible: {0}")]
    NotAdmissible(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}
