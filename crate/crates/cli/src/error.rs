use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] duorep::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &str, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }

    /// The error variant name, e.g. `NotCw` or `Usage`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
            CliError::Io { .. } => "Io".into(),
            CliError::Usage(_) => "Usage".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "error": { "kind": self.kind(), "message": self.to_string() },
        })
    }
}
