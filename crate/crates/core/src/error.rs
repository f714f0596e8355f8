use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("basis needs {needed} bytes, budget is {budget}")]
    MemoryBudget { needed: usize, budget: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Regime(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownSymbol(_) => 2,
            Error::Numeric(_) | Error::MemoryBudget { .. } | Error::Io(_) => 3,
        }
    }
}
