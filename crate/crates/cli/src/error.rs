use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("invalid {key}: {message}")]
    Invalid { key: String, message: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Numerical(#[from] lambda_dicke::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for numerical failures, 1 for anything the user can fix in the
    /// configuration or environment.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(e) if !is_input_error(e) => 2,
            _ => 1,
        }
    }
}

fn is_input_error(e: &lambda_dicke::Error) -> bool {
    use lambda_dicke::Error as E;
    match e {
        E::InvalidParameter(_) | E::InvalidGrid(_) | E::NonzeroDelta(_) => true,
        E::AtNode { source, .. } => is_input_error(source),
        _ => false,
    }
}
