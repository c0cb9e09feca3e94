use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("UAC not a QHS3: {0}")]
    NotRationalHomologySphere(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
