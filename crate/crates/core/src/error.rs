use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid element id {0}")]
    InvalidElement(usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::linalg::Field, crate::linalg::Field),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid group law: {0}")]
    GroupLaw(String),
    #[error("invalid biset: {0}")]
    Biset(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("not a functor: {0}")]
    Functoriality(String),
    #[error("ill-defined map: {0}")]
    WellDefinedness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
