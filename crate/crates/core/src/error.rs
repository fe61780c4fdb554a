use thiserror::Error;

/// Errors produced by the computation modules.
///
/// Input validation failures carry the offending field or position so that a
/// front end can point at the exact spot in the input record.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime power")]
    InvalidFieldOrder(u64),

    #[error("square class token `{token}` is not valid over {field}")]
    InvalidSquareClass { field: String, token: String },

    #[error("quadratic factor discriminant must not be the class of 1; split it as rational x rational")]
    SplitQuadraticFactor,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("Euler class is only defined for even degrees, got {0}")]
    OddDegree(i64),

    #[error("self-intersection {d} at vertex `{name}` is odd; the quadratic pipeline needs even weights (rank-only mode handles odd weights)")]
    OddSelfIntersection { name: String, d: i64 },

    #[error("operation requires the real closed field, got {0}")]
    WrongField(String),

    #[error("non-rational intersection point on edge ({i},{j}): the incidence/homology path supports rational points only; the Mumford matrix entry is still available via trace forms")]
    NonRationalPoint { i: usize, j: usize },

    #[error("differential on Artin-labeled generators (label `{label}`, twist {q}) is not a signed permutation; homology of this block is not an Artin-Tate motive")]
    NonPermutationArtinDifferential { label: String, q: i64 },

    #[error("face map {from:?} -> {to:?} is not determined by the stratum descriptors; supply an explicit face matrix")]
    MissingFaceData { from: Vec<usize>, to: Vec<usize> },

    #[error("d o d != 0: composite through degree {degree} is nonzero at entry ({row},{col})")]
    ComposeNonzero { degree: usize, row: usize, col: usize },

    #[error("arrangement has {0} hyperplanes; subset enumeration is capped at 20")]
    TooManyHyperplanes(usize),

    #[error("invalid input at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
