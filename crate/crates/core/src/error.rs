use thiserror::Error;

use crate::genperm::ViolationWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {d} outside supported range 1..={max}")]
    DimensionOutOfRange { d: usize, max: usize },

    #[error("dimension mismatch: expected d = {expected}, found d = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("set function must vanish on the empty set")]
    NonzeroAtEmpty,

    #[error("subset {bits:#b} is not contained in [{d}]")]
    SubsetOutOfRange { bits: u32, d: usize },

    #[error("z-vector is not supermodular (K = {k:?}, i = {i}, j = {j})")]
    NotSupermodular { k: Vec<usize>, i: usize, j: usize },

    #[error("not a generalized permutahedron: {0}")]
    InvalidRep(ViolationWitness),

    #[error("expected integer values, found {0}")]
    NotIntegral(String),

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("no compatible direction exists for E = {e:?}, T = {t:?} in d = {d}")]
    NoCompatibleDirection { e: Vec<usize>, t: Vec<usize>, d: usize },

    #[error("invalid ray index: {0}")]
    InvalidRay(String),

    #[error("face is not a vertex or an edge parallel to some e_i - e_j: {0}")]
    NotAnEdge(String),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("functional is not translation-invariant (nonzero at singleton {0})")]
    NotTranslationInvariant(usize),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("malformed input at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two independent computations that must agree did not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
