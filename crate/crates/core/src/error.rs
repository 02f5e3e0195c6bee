use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid qubit count {n}: must be between {min} and {max}")]
    InvalidSize { n: usize, min: usize, max: usize },

    #[error("qubit index {index} out of range 1..={n_qubits}")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("controlled-Z needs at least two distinct targets, got {0}")]
    TooFewTargets(usize),

    #[error("amplitude vector has length {len}, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("state has a component of norm {residual} outside the symmetric subspace")]
    NotSymmetric { residual: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("mean spin too short for the closed-form frame (R = {r_len:e}, r = {r_perp:e})")]
    SingularFrame { r_len: f64, r_perp: f64 },

    #[error("constraint infeasible at {name} = {value}: dependent amplitude squared would be {remainder:e}")]
    Infeasible {
        name: &'static str,
        value: f64,
        remainder: f64,
    },

    #[error("invalid subsystem: {0}")]
    InvalidCut(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
