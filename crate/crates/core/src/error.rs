use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable `{0}` must have at least two states")]
    TooFewStates(String),
    #[error("variable `{variable}` has duplicate state label `{label}`")]
    DuplicateState { variable: String, label: String },
    #[error("duplicate variable name `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("edge set contains a directed cycle")]
    CycleDetected,
    #[error("node sets passed to d-separation must be pairwise disjoint (`{0}` repeats)")]
    OverlappingSets(String),

    #[error("invalid CPT for `{variable}`: {reason}")]
    InvalidCpt { variable: String, reason: String },
    #[error("state {state} out of range for `{variable}` ({cardinality} states)")]
    StateOutOfRange {
        variable: String,
        state: usize,
        cardinality: usize,
    },
    #[error("unknown state `{state}` for `{variable}`")]
    UnknownState { variable: String, state: String },
    #[error("assignment is missing `{0}`")]
    IncompleteAssignment(String),
    #[error("query variable `{0}` is also observed")]
    QueryInEvidence(String),
    #[error("evidence has probability zero")]
    ZeroEvidence,

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("equivalent sample size must be positive, got {0}")]
    NonPositiveEss(f64),
    #[error("pseudo-count must be non-negative, got {0}")]
    NegativePseudoCount(f64),
    #[error("no data rows available for the test")]
    InsufficientData,
    #[error("significance level must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("line {line}: expected {expected} fields, found {found}")]
    MalformedRow { line: usize, expected: usize, found: usize },
    #[error("line {line}: cannot parse `{value}` in column `{column}`")]
    InvalidNumber { line: usize, column: String, value: String },
    #[error("unknown category {value} for `{column}`")]
    UnknownCategory { column: String, value: String },
    #[error("cutpoints for `{0}` are invalid: {1}")]
    NonMonotoneCutpoints(String, String),
    #[error("split ratio must lie in (0, 1), got {0}")]
    InvalidRatio(f64),

    #[error("predicted and actual label lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("label {0} is not binary")]
    NonBinaryLabel(usize),
    #[error("confusion matrix is empty")]
    EmptyMatrix,

    #[error("unsupported model format version {0}")]
    UnsupportedVersion(u32),
    #[error("malformed model file: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
