use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tile set: {0}")]
    InvalidTileSet(String),

    #[error("duplicate tiles {first} and {second} carry identical codes")]
    DuplicateTiles { first: usize, second: usize },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no compatible tile for tiling cell {cell:?}")]
    NoCandidate { cell: [usize; 3] },

    #[error("shape sampler gave up after {attempts} degenerate draws")]
    SamplerExhausted { attempts: usize },

    #[error("field {field} is not tracked")]
    UntrackedField { field: &'static str },

    #[error("continuity violation at global node {node:?} (tiles {first} and {second})")]
    ContinuityViolation {
        node: [usize; 3],
        first: usize,
        second: usize,
    },

    #[error("cannot allocate {what}")]
    Resource { what: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image encoding failed: {0}")]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ContinuityViolation { .. } => 3,
            _ => 2,
        }
    }
}
