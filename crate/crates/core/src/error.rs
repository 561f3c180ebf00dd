//! Error taxonomy shared by every module.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SimError>;

/// Everything that can go wrong while loading a configuration or running an
/// experiment. Numerical failures carry enough context to locate the step
/// and agent that produced them.
#[derive(Debug, thiserror::Error)]
pub enum SimError {
    /// The config file could not be read or parsed.
    #[error("config parse error: {0}")]
    Parse(String),

    /// A config invariant was violated; the message names it.
    #[error("config validation failed: {0}")]
    Validation(String),

    /// A vector or matrix had an unexpected dimension.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An integrated state left the configured guard box or went non-finite.
    #[error("numerical blowup: {0}")]
    NumericalBlowup(String),

    /// A group operation was asked for on an empty agent list.
    #[error("empty group")]
    EmptyGroup,

    /// Trajectory cost requested over an empty record list.
    #[error("empty trajectory")]
    EmptyTrajectory,

    /// An approximator was used in a role it does not have.
    #[error("estimator role mismatch: expected {expected}, got {actual}")]
    RoleMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    /// The unnormalized mass integral collapsed below the usable threshold.
    #[error("degenerate mass density: unnormalized integral {integral:e}")]
    DegenerateDensity { integral: f64 },

    /// A residual evaluated to NaN or infinity.
    #[error("non-finite residual: {0}")]
    NonFiniteResidual(String),

    /// A weight update pushed an approximator past the norm guard.
    #[error("weight guard tripped: {0}")]
    WeightGuardTripped(String),

    /// The control-cost matrix failed its positive-definiteness factorization.
    #[error("R matrix not positive definite")]
    SingularR,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl SimError {
    /// Process exit code the CLI maps this error to.
    /// 2 = invalid configuration, 3 = numerical abort, 1 = anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            SimError::Parse(_) | SimError::Validation(_) => 2,
            SimError::NumericalBlowup(_)
            | SimError::WeightGuardTripped(_)
            | SimError::DegenerateDensity { .. }
            | SimError::NonFiniteResidual(_) => 3,
            _ => 1,
        }
    }
}
