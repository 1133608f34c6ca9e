use thiserror::Error;

use crate::tower::Elem;

/// A proper factor of a level's minimal polynomial, found while inverting.
///
/// The quotient ring at `level` is not a field; `factor` (monic, lowest
/// degree first) divides the level's minimal polynomial exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityWitness {
    pub level: usize,
    pub factor: Vec<Elem>,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("level {} is reducible: found a factor of degree {}", .0.level, .0.factor.len().saturating_sub(1))]
    Reducible(ReducibilityWitness),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinpoly(String),
    #[error("element lives at level {found} but the tower has only {height} levels")]
    LevelOutOfRange { found: usize, height: usize },
    #[error("square root of zero requested")]
    SqrtOfZero,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("every form vanishes at the chosen vector")]
    AllVanish,
    #[error("system of {forms} forms needs dimension at least {needed}, got {dim}")]
    DimensionTooSmall { forms: usize, dim: usize, needed: usize },
    #[error("basis is not linearly independent over the base field")]
    BasisDependent,
    #[error("extension degree {0} exceeds 8")]
    DegreeTooLarge(usize),
    #[error("even-degree extension of degree {0} needs an explicit maximal 2-subextension")]
    Missing2PartDeclaration(usize),
    #[error("invalid quaternion presentation: {0}")]
    InvalidQuaternion(String),
    #[error("vector is not isotropic for the given form")]
    NotIsotropic,
    #[error("vector is zero")]
    ZeroVector,
    #[error("g(alpha) vanishes; use the direct witness")]
    SlotVanishes,
    #[error("invalid cyclic extension data: {0}")]
    InvalidCyclic(String),
    #[error("algebra dimension {0} exceeds the 4096 guard")]
    TooLarge(usize),
    #[error("algebra is not given in the 2x2 matrix-unit basis")]
    NotMatrixUnits,
    #[error("extensions are not linearly disjoint: {0}")]
    NotDisjoint(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("dynamic evaluation did not converge after {0} refinements")]
    RefinementLimit(usize),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code: 2 for malformed input, 3 for a violated
    /// precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidMinpoly(_)
            | Error::LevelOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidQuaternion(_)
            | Error::InvalidCyclic(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
