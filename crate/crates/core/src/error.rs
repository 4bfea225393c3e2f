use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded {cap} elements")]
    ClosureOverflow { cap: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("character inner product {value} is not within tolerance of an integer")]
    NotNearInteger { value: f64 },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("kernel space for {irrep} is empty")]
    EmptyKernel { irrep: String },

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("graph is not symmetric under group element {element}: {reason}")]
    NotSymmetric { element: String, reason: String },

    #[error("representation {label} is reducible (<chi, chi> = {norm})")]
    ReducibleInput { label: String, norm: f64 },

    #[error("wavenumber must be positive, got {0}")]
    NonpositiveK(f64),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("roots at k = {k1} and k = {k2} are closer than twice the step; retry with step <= {suggested_step}")]
    WindowTooCoarse { k1: f64, k2: f64, suggested_step: f64 },
}
