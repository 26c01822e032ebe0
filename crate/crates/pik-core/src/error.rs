use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision k = {k}: {reason}")]
    InvalidPrecision { k: u32, reason: &'static str },

    #[error("precision mismatch: k = {left} vs k = {right}")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("{what} requires k >= {min} (k = {k})")]
    RequiresPrecision { what: String, min: u32, k: u32 },

    #[error("cannot lift from k = {from} down to k = {to}")]
    LiftDown { from: u32, to: u32 },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("not a permutation of 0..{0}")]
    NotBijective(usize),

    #[error("composition mismatch at {path}: codomain {cod} does not match domain {dom}")]
    CompositionMismatch { path: String, cod: usize, dom: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("dimension {dim} exceeds the evaluation limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("operation cancelled")]
    Cancelled,

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("{0}")]
    InvalidArgument(String),
}
