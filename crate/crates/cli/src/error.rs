use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("{flag} = {value} exceeds the ceiling {ceiling}{context}")]
    Bound {
        flag: &'static str,
        value: usize,
        ceiling: usize,
        context: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] affine_fk::Error),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use affine_fk::Error as E;
        match self {
            HarnessError::Usage(_) | HarnessError::Bound { .. } => exit::USAGE,
            HarnessError::Core(
                E::InvalidModulus(_)
                | E::InvalidWindow { .. }
                | E::OutOfRange(_)
                | E::NotGrassmannian
                | E::NotBounded(..)
                | E::DegreeBoundExceeded { .. }
                | E::Parse(_),
            ) => exit::USAGE,
            _ => exit::INTERNAL,
        }
    }
}
