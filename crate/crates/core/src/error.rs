use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error("division by an expression that is identically zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("rational spectrum required: {0}")]
    RationalSpectrum(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("limit does not exist: {0}")]
    NoLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
