//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the validity range of a fit or model.
    #[error("{what} = {value} outside valid range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Input sits on a pole of the evaluated expression.
    #[error("singular input: {0}")]
    SingularInput(String),

    /// The tridiagonal Bloch system could not be solved to the required residual.
    #[error("ill-conditioned Floquet system: residual {residual:.3e} at cutoff {cutoff}")]
    IllConditioned { residual: f64, cutoff: usize },

    /// A drive that does not satisfy the symmetric bichromatic constraints.
    #[error("invalid drive: {0}")]
    InvalidDrive(String),

    /// The internal-temperature balance has no root on the search bracket.
    #[error("unbounded heating: net power {net_power:.3e} W still positive at T = {t_max} K")]
    UnboundedHeating { net_power: f64, t_max: f64 },

    /// No stable force equilibrium in the search domain.
    #[error("no trap: {details}")]
    NoTrap { details: String },

    /// An iterative solver exhausted its iteration budget.
    #[error("convergence failure in {what}: {details}")]
    ConvergenceFailure {
        what: &'static str,
        details: String,
    },

    /// Bad configuration key, value, or combination.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for "no trap", 3 for solver
    /// failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoTrap { .. } => 2,
            Error::ConvergenceFailure { .. }
            | Error::UnboundedHeating { .. }
            | Error::IllConditioned { .. } => 3,
            _ => 1,
        }
    }
}
