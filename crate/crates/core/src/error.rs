use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical negatives ("not conjugate", "distinct cosets") are never
/// reported through this type; they are ordinary return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("generator index {index} does not fit in {strands} strands")]
    IndexOutOfRange { index: u32, strands: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("middle index mismatch: left coset ends at {left}, right coset starts at {right}")]
    IndexMismatch { left: u32, right: u32 },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("support condition violated: {0}")]
    Support(String),

    #[error("index grid violates monotonicity: {0}")]
    Grid(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
