use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: `{field}`: {message}")]
    Config {
        line: usize,
        field: String,
        message: String,
    },
    #[error("config {path}: {source}")]
    ConfigJson {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] qrac_core::Error),
    #[error("acceptance band failed: {0}")]
    Acceptance(String),
}

impl CliError {
    pub(crate) fn config(line: usize, field: &str, message: impl Into<String>) -> Self {
        CliError::Config {
            line,
            field: field.to_owned(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 3 for a missed acceptance band, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Acceptance(_) => 3,
            _ => 2,
        }
    }
}
