use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not positive definite{}", .0.as_ref().map(|s| format!(" ({s})")).unwrap_or_default())]
    NotPositiveDefinite(Option<String>),
    #[error("square root is not exact in the rational backend")]
    InexactSqrt,
    #[error("generator is not traceless")]
    NotTraceless,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not a unit vector")]
    NotUnit,
    #[error("vector has no real coordinate")]
    NoRealCoordinate,
    #[error("polynomial is not a quadratic form")]
    NotQuadratic,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("Newton iteration did not converge in {iterations} steps (residual {residual:e})")]
    MaxIterations { iterations: usize, residual: f64 },
    #[error("Newton system is singular (condition estimate {condition:e})")]
    SingularNewtonSystem { condition: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
