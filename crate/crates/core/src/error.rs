use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage an error originated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Tokenize,
    Lookup,
    Projection,
    Takens,
    Persistence,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Stage::Tokenize => "tokenize",
            Stage::Lookup => "lookup",
            Stage::Projection => "projection",
            Stage::Takens => "takens",
            Stage::Persistence => "persistence",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("embedding file is empty")]
    EmptyFile,

    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("vector length {found} does not match direction length {expected}")]
    VectorLengthMismatch { expected: usize, found: usize },

    #[error("none of the {0} tokens is in the embedding vocabulary")]
    AllTokensSkipped(usize),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("invalid delay parameters: dimension {dimension}, delay {delay} (both must be >= 1)")]
    InvalidDelayParams { dimension: usize, delay: usize },

    #[error("series of length {length} is too short: need at least {required} values")]
    SeriesTooShort { length: usize, required: usize },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("invalid threshold {0}")]
    InvalidThreshold(f64),

    #[error("unsupported homology dimension {0} (only 0 and 1)")]
    UnsupportedHomologyDimension(usize),

    #[error("naive reduction refuses {0} points (limit is 16)")]
    RefusesLargeInput(usize),

    #[error("unknown text id {0:?}")]
    UnknownText(String),

    #[error("corpus line {line}: {reason}")]
    MalformedCorpus { line: usize, reason: String },

    #[error("no embedding table configured for dimension {0}")]
    MissingEmbedding(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid diagram JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn at(stage: Stage, source: Error) -> Error {
        Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// The innermost error, unwrapping stage annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by bad user input rather than a defect.
    pub fn is_input_error(&self) -> bool {
        !matches!(self.root(), Error::Internal(_))
    }
}
