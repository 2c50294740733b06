use crate::expr::SyntaxError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Core(#[from] milnor_core::Error),
}

impl CliError {
    /// 1 for a failed verification, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        use milnor_core::Error as E;
        match self {
            CliError::Core(E::NonIntegralPairing(_) | E::HypothesisFailed(_) | E::Singular) => 1,
            _ => 2,
        }
    }
}
