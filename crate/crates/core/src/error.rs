use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("measurement strength must lie in [0, 1], got {0}")]
    StrengthOutOfRange(f64),

    #[error("detuning must be positive for branch quantities, got {0}")]
    NonPositiveDetuning(f64),

    #[error("binary entropy argument must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("coefficient of performance must be positive, got {0}")]
    NonPositiveCop(f64),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
