use thiserror::Error;

/// Errors surfaced by construction, evaluation and search routines.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("channel magnitude must be finite and nonnegative")]
    InvalidMagnitude,
    #[error("angle must be finite")]
    InvalidAngle,
    #[error("background channel must have strictly positive magnitude")]
    ZeroBackground,
    #[error("beam length {beam} does not match instance element count {instance}")]
    DimensionMismatch { beam: usize, instance: usize },
    #[error("phase alphabet requires K >= 2, got K = {k}")]
    InvalidAlphabet { k: u32 },
    #[error("beam index {index} outside the valid range 1..={k}")]
    IndexOutOfRange { index: u32, k: u32 },
    #[error("enumeration needs {required} evaluations, exceeding the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("{algorithm} requires a binary alphabet, got K = {k}")]
    RequiresBinaryAlphabet { algorithm: &'static str, k: u32 },
    #[error("power level must be finite, got {dbm} dBm")]
    InvalidPowerLevel { dbm: f64 },
    #[error("scene positions must be pairwise distinct")]
    CoincidentPositions,
    #[error("{0}")]
    InvalidParameter(&'static str),
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
}
