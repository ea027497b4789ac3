use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cyclotomic index {0} outside the supported range 1..=104")]
    IndexOutOfRange(u64),
    #[error("inexact division: remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("invalid design spec: {0}")]
    Spec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("noble identity does not apply: {0}")]
    Noble(String),
    #[error("invalid design file: {0}")]
    DesignFile(String),
}
