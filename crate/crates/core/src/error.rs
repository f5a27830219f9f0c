use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CroError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("objective returned a non-finite value ({value}) at an initial point")]
    NonFiniteInitial { value: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rotation matrix is not orthogonal (max |M^T M - I| = {residual:e})")]
    NotOrthogonal { residual: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
