use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("regime conflict: {0}")]
    RegimeConflict(String),

    /// The coherence multiplier vanishes on the whole interval, so the
    /// reduced state is maximally mixed and the generic eigenbranch
    /// machinery does not apply.
    #[error("degenerate trace: coherence factor vanishes on the whole interval")]
    DegenerateTrace,

    /// The argument of the coherence factor has no derivative at this point.
    #[error("phase derivative undefined at t = {0}")]
    UndefinedPhaseDerivative(f64),

    /// The branch sum vanished; the phase carries no information.
    #[error("phase undefined: branch sum vanished")]
    UndefinedPhase,

    #[error("quadrature did not converge: step-halving changed the phase by {0:.3e} rad")]
    NonConvergence(f64),

    #[error("eigenbranch tracking failed across an unresolved degeneracy; refine the time grid")]
    BranchTracking,

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for validation problems, 3 for
    /// numerical ones, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::RegimeConflict(_)
            | Error::UnknownPreset(_)
            | Error::Config(_) => 2,
            Error::DegenerateTrace
            | Error::UndefinedPhaseDerivative(_)
            | Error::UndefinedPhase
            | Error::NonConvergence(_)
            | Error::BranchTracking => 3,
            Error::Io(_) => 1,
        }
    }
}
