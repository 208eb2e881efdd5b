use thiserror::Error;

use crate::sort::{Layer, SortKind};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("layer {layer} is not valid for sort {sort}")]
    InvalidLayer { layer: Layer, sort: SortKind },

    #[error("layer {layer} has no inverse in sort {sort}")]
    NonInvertibleLayer { layer: Layer, sort: SortKind },

    #[error("layer {numerator} cannot be divided by {denominator} in sort {sort}")]
    LayerNotDivisible {
        numerator: Box<Layer>,
        denominator: Box<Layer>,
        sort: SortKind,
    },

    #[error("polynomial is not in full form")]
    NotFullForm,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is not separable")]
    NotSeparable,

    #[error("polynomial is not primary")]
    NotPrimary,

    #[error("polynomials are not primary for a common root")]
    NotPrimaryPair,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("polynomial has degree zero")]
    DegreeZero,

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("index {index} out of range (max {max})")]
    OutOfRange { index: u32, max: u32 },

    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("factor product does not reproduce the input polynomial")]
    ReconstructionMismatch,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
