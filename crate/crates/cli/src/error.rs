use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] oqf_core::error::Error),

    #[error("{0}")]
    Physics(String),

    #[error("cannot write output: {0}")]
    Output(String),

    #[error("{failed} of {total} identities exceeded their tolerance")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    /// 1 for bad input, 2 for physics or numerical failures, 3 when a
    /// verification row fails.
    pub fn exit_code(&self) -> i32 {
        use oqf_core::error::Error as E;
        match self {
            CliError::Config(_) | CliError::Output(_) => 1,
            CliError::Physics(_) => 2,
            CliError::Verification { .. } => 3,
            CliError::Core(e) => match e {
                E::NotSquare { .. }
                | E::DimensionMismatch { .. }
                | E::NonFinite
                | E::NegativeTime(_)
                | E::NotHermitian(_)
                | E::ModeCount { .. }
                | E::InvalidParameter(_) => 1,
                E::IllConditioned(_)
                | E::NearResonance { .. }
                | E::NotDissipative(_)
                | E::NotSemisimple(..)
                | E::SpectrumOutOfRange { .. }
                | E::NoUniqueSteadyState { .. }
                | E::Postcondition { .. }
                | E::NoConvergence => 2,
            },
        }
    }
}
