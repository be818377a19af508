use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("grading error: {0}")]
    Grading(String),

    #[error("unit condition violated: {0}")]
    NotUnit(String),

    #[error("sequence is not regular: {0}")]
    NotRegular(String),

    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),

    /// Two independent algorithms disagreed. Always a bug.
    #[error("cross-check failed in {what}: {detail}")]
    CrossCheck { what: &'static str, detail: String },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring_mismatch",
            Error::Parse { .. } => "parse_error",
            Error::InvalidInput(_) => "invalid_input",
            Error::Grading(_) => "grading_error",
            Error::NotUnit(_) => "unit_condition",
            Error::NotRegular(_) => "not_regular",
            Error::IllDefinedMap(_) => "ill_defined_map",
            Error::CrossCheck { .. } => "cross_check_failed",
        }
    }

    pub(crate) fn cross(what: &'static str, detail: impl Into<String>) -> Self {
        Error::CrossCheck { what, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
