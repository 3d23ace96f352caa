use std::path::PathBuf;
use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown scenario `{name}` (line {line}); run `list` for the registry")]
    UnknownScenario { name: String, line: usize },

    #[error("scenario `{scenario}` failed: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: ensemble_nmr::Error,
    },

    #[error("scenario `{scenario}` produced {found:?}, declared {declared:?}")]
    OutputMismatch {
        scenario: String,
        declared: Vec<String>,
        found: Vec<String>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
