//! Error type shared across the toolkit.

/// Errors raised by the toolkit. The CLI maps these onto process exit codes:
/// input/parse errors exit 2, capacity errors exit 3, invariant violations exit 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Signals either an implementation bug or a counterexample to the
    /// classification; never silently resolved.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Domain(_) => 2,
            Error::Capacity(_) => 3,
            Error::Invariant(_) => 4,
        }
    }
}
