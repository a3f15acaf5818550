use thiserror::Error;

use crate::codecomp::Violation;
use crate::cset::CatViolation;
use crate::homfront::DecompViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),

    #[error("function size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("function entry {value} at index {index} is out of range for a target of size {target_size}")]
    OutOfRange {
        index: usize,
        value: usize,
        target_size: usize,
    },

    #[error("edge id {0} does not exist")]
    InvalidEdge(usize),

    #[error("diagram is invalid: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("category data is invalid: {}", format_violations(.0))]
    Category(Vec<CatViolation>),

    #[error("decomposition is invalid: {}", format_violations(.0))]
    Decomposition(Vec<DecompViolation>),

    #[error("stitched map is not a homomorphism")]
    BadStitch,

    #[error("shape is not a forest")]
    NotAForest,

    #[error("shape is not a tree")]
    NotATree,

    #[error("shape has {0} edges; the discrete procedure needs an edgeless shape")]
    NotDiscrete(usize),

    #[error("no feedback vertex set of size at most {0}")]
    NoFvsWithinBudget(usize),

    #[error("supplied vertex set is not a feedback vertex set")]
    InvalidFvs,

    #[error("supplied vertex set has length {found}, shape has {expected} vertices")]
    FvsLength { expected: usize, found: usize },

    #[error("enumeration would exceed the cap of {0} tuples")]
    CapExceeded(u64),

    #[error("empty mask at vertex {0} while extracting a witness")]
    EmptyMask(usize),

    #[error("section-test count overflows u64")]
    TooManySectionTests,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations<V: std::fmt::Display>(vs: &[V]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} duplicates edge {first} ({u}, {v})")]
    Duplicate {
        edge: usize,
        first: usize,
        u: usize,
        v: usize,
    },
    #[error("edge {edge} has endpoint {vertex} outside 0..{n}")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
