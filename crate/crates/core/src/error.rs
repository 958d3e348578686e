use thiserror::Error;

use crate::blade::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("blade mask {mask:#b} references a generator outside {sig}")]
    InvalidBlade { mask: u32, sig: Signature },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("scalar field mismatch between operands")]
    FieldMismatch,

    #[error("{what} = {value} exceeds the supported bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("{small} does not embed generator-wise in {big}")]
    NotEmbeddable { big: Signature, small: Signature },

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unbound placeholder: {0}")]
    Unbound(String),

    #[error("position {0} is not an interior term of the sequence")]
    InvalidPosition(usize),

    #[error("search space of {size} assignments exceeds the ceiling {ceiling}")]
    SearchTooLarge { size: String, ceiling: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
