use thiserror::Error;

use crate::label::ColorId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("color {0} is not in the color set")]
    ColorOutOfRange(ColorId),
    #[error("unsupported for this oracle: {0}")]
    Unsupported(String),
    #[error("invalid label-group configuration: {0}")]
    Config(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("index {index} out of range 1..={len}")]
    Index { index: usize, len: usize },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("not a group element (domain and range arity must be 1)")]
    NotGroupElement,
    #[error("element is not in the canonical kernel")]
    NotInKernel,
    #[error("element lies in the canonical kernel")]
    InKernel,
    #[error("label does not act trivially")]
    LabelNotInKernel,
    #[error("brick must be proper (non-empty address)")]
    ImproperBrick,
    #[error("bricks {0} and {1} overlap")]
    OverlappingBricks(String, String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("{line}:{column}: syntax error: found {found}, expected one of {expected:?}")]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
