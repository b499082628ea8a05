use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("relation {relation} leaves the window at object {object}")]
    OutsideWindow { relation: usize, object: i64 },
    #[error("object {0} is not in the window")]
    ObjectOutOfRange(i64),
    #[error("elements are not composable: {0}")]
    NotComposable(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not flat: hom piece ({top},{bottom}) is not free over the dual numbers")]
    NotFlat { top: i64, bottom: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
