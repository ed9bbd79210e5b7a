use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the analysis chain.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid profile `{run_id}`: {reason}")]
    InvalidProfile { run_id: String, reason: String },

    #[error("invalid fit window [{lo}, {hi}]: {reason}")]
    InvalidWindow { lo: f64, hi: f64, reason: String },

    #[error("insufficient data in run `{run_id}`: need {needed} samples, found {found}")]
    InsufficientData {
        run_id: String,
        needed: usize,
        found: usize,
    },

    #[error("degenerate abscissa: all fit abscissae coincide")]
    DegenerateAbscissa,

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("nonphysical prefactor {prefactor}: ln Re1 = sqrt(3)(A - 5/2) must be positive")]
    NonphysicalPrefactor { prefactor: f64 },

    #[error("metadata required: `{field}` is missing from run `{run_id}`")]
    MetadataRequired { run_id: String, field: &'static str },

    #[error("collapse undefined: every sample in the window produced an undefined psi")]
    AllPointsUndefined,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no parseable profiles in {dir} ({failures} file(s) failed)")]
    EmptyCatalog { dir: PathBuf, failures: usize },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
