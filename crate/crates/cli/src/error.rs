use std::path::{Path, PathBuf};

use nashlift_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: Error },

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Input(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn in_file(path: &Path, source: Error) -> Self {
        CliError::InFile {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn core(&self) -> Option<&Error> {
        match self {
            CliError::InFile { source, .. } | CliError::Core(source) => Some(source),
            _ => None,
        }
    }

    /// 2 for a violated hypothesis, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self.core() {
            Some(e) if e.is_hypothesis_violation() => 2,
            _ => 1,
        }
    }
}
