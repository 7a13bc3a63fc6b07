use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field length {found} does not match grid size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported reconstruction order k = {0} (expected 2 or 3)")]
    UnsupportedOrder(usize),

    #[error("Lax-Friedrichs coefficient {alpha} is below max|u| = {max_u}")]
    SplittingViolation { alpha: f64, max_u: f64 },

    #[error("singular operator: {0}")]
    SingularOperator(String),

    #[error("linear solve residual {residual:e} exceeds tolerance {tolerance:e}")]
    SolveResidual { residual: f64, tolerance: f64 },

    #[error("non-finite value in Runge-Kutta stage {stage} at t = {time}")]
    NonFiniteStage { stage: usize, time: f64 },

    #[error("profile generation failed: {0}")]
    Profile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
