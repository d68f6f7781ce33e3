use thiserror::Error;

/// Errors raised while extending a function to (dual) quaternions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    #[error("DomainError: {function} is not defined at {re} + {im}i")]
    Domain { function: String, re: f64, im: f64 },
    #[error("SingularInput: {0}")]
    SingularInput(String),
    #[error("NonCommuting: commutator norm {defect:e} exceeds tolerance {tolerance:e}")]
    NonCommuting { defect: f64, tolerance: f64 },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("NotAnticommuting: anticommutator norm {defect:e} exceeds tolerance {tolerance:e}")]
    NotAnticommuting { defect: f64, tolerance: f64 },
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

impl CalcError {
    /// Stable short name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            CalcError::Domain { .. } => "DomainError",
            CalcError::SingularInput(_) => "SingularInput",
            CalcError::NonCommuting { .. } => "NonCommuting",
            CalcError::ShapeMismatch(_) => "ShapeMismatch",
            CalcError::NotAnticommuting { .. } => "NotAnticommuting",
            CalcError::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, CalcError>;
