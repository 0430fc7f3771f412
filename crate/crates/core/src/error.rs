use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator is not orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("group closure exceeded {cap} elements")]
    ClosureOverflow { cap: usize },
    #[error("set is not closed under product: {0}")]
    NotClosed(String),
    #[error("inconsistent base complex: {0}")]
    Construction(String),
    #[error("assignment has {got} units, template has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("merging faces {0} and {1} of equal chirality does not yield the prototile")]
    PrototileCongruence(usize, usize),
    #[error("matrix is not an automorphism of {base}: {detail}")]
    NotAnAutomorphism { base: String, detail: String },
    #[error("degree classes are defined for the B𝒪 c-case only")]
    NotDegreeCase,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown record {0:?}")]
    UnknownRecord(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
