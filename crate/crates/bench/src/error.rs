use qmc_core::QmcError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] QmcError),
    #[error("{0}")]
    Argument(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config error: {0}")]
    Config(#[from] toml::de::Error),
}

impl BenchError {
    /// 2 for simulator resource limits, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Core(QmcError::ResourceLimit { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;

pub fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(BenchError::Argument(msg.into()))
}
