use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{what} exceeds the size bound ({actual} > {limit})")]
    SizeBound {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("subset {mask:#x} is not within a ground set of {n} elements")]
    SubsetOutOfRange { mask: u32, n: usize },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("invalid weight function: {0}")]
    InvalidWeights(String),

    #[error("weight of element {element} is not a nonnegative integer")]
    NonIntegerWeight { element: usize },

    #[error("matroid is not binary")]
    NotBinary,

    #[error("subset {mask:#x} is not a circuit")]
    NotACircuit { mask: u32 },

    #[error("subset {mask:#x} is not independent")]
    NotIndependent { mask: u32 },

    #[error("point is infeasible: constraint {constraint} violated")]
    Infeasible { constraint: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
