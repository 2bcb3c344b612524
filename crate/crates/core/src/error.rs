use thiserror::Error;

/// Errors raised by the simulator, circuit tools and estimators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmcError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit: {qubits} qubits need {bytes} bytes of amplitudes, cap is {cap} qubits")]
    ResourceLimit { qubits: usize, cap: usize, bytes: u128 },

    #[error("cannot decompose: {0}")]
    Decomposition(String),

    #[error("degenerate model: {0}")]
    ModelDegeneracy(String),
}

pub type Result<T> = std::result::Result<T, QmcError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(QmcError::InvalidArgument(msg.into()))
}
