use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size for {what}: n = {n}, need at least {min}")]
    InvalidSize { what: &'static str, n: usize, min: usize },

    #[error("size limit exceeded for {what}: n = {n}, at most {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: graph has {expected} vertices, phase vector has {got}")]
    Shape { expected: usize, got: usize },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical divergence at iteration {iteration}: non-finite energy or gradient")]
    Divergence { iteration: usize },

    #[error("symmetric eigensolver did not converge (n = {n})")]
    EigenSolver { n: usize },

    #[error("trial {trial} (seed {seed:#018x}): {source}")]
    Trial {
        trial: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("cell n = {n}, p = {p}: {source}")]
    Cell {
        n: usize,
        p: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of the numerics (divergence, eigensolver) as opposed
    /// to bad input. Context wrappers are looked through.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Divergence { .. } | Error::EigenSolver { .. } => true,
            Error::Trial { source, .. } | Error::Cell { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
