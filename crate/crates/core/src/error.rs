use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("brute force needs {vars} variables but the cap is {cap}")]
    BruteForceCap { vars: usize, cap: usize },

    #[error("enumeration budget exceeded: {needed} combinations > {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("predicate fixes coordinate {0}; pin constants first")]
    FixedCoordinate(usize),

    #[error("no hyperplane covers excluded tuple {0}; AT is not a polymorphism")]
    Cover(String),

    #[error("no applicable algorithm: {0}")]
    NoAlgorithm(String),

    #[error("template shape violation: {0}")]
    Shape(String),

    #[error("sdp solver failed after {iterations} iterations (primal residual {primal:.3e}, dual residual {dual:.3e}, gap {gap:.3e})")]
    Sdp {
        iterations: usize,
        primal: f64,
        dual: f64,
        gap: f64,
    },

    #[error("orthogonal alignment residual {0:.3e} exceeds tolerance")]
    Alignment(f64),

    #[error("dimension: {0}")]
    Dimension(String),

    #[error("instance has nonzero sdp error {0:.3e}")]
    NonzeroError(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
