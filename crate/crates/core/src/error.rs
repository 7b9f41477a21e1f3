use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty input: no edge events")]
    EmptyInput,

    #[error("timestamp not representable as a 64-bit signed integer: {0}")]
    TimestampOverflow(String),

    #[error("line {line}: {reason}")]
    Parse { line: u64, reason: String },

    #[error("invalid edge-list format: {0}")]
    InvalidFormat(String),

    #[error("unknown dataset '{0}'")]
    UnknownDataset(String),

    #[error("network error fetching {url}: {reason}")]
    Network { url: String, reason: String },

    #[error("checksum mismatch for {}: expected {expected}, got {actual}", path.display())]
    ChecksumMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("number of bins must be at least 1, got {0}")]
    InvalidBins(u64),

    #[error("granularity '{granularity}' requires unix-second timestamps, stream uses {unit}")]
    UnitMismatch { granularity: String, unit: String },

    #[error("sub-sampling kept no events")]
    EmptyResult,

    #[error("cannot sample {requested} nodes from a stream with {available}")]
    CountTooLarge { requested: usize, available: usize },

    #[error("invalid train fraction {0}: must lie strictly between 0 and 1")]
    InvalidSplit(f64),

    #[error("chronological split leaves the {0} side empty")]
    DegenerateSplit(&'static str),

    #[error("train edge set is empty")]
    EmptyTrain,

    #[error("test edge set is empty")]
    EmptyTest,

    #[error("sequence has no non-empty snapshot")]
    NoEdges,

    #[error("{rows} unique edges exceed the TET row cap of {cap}; sub-sample the stream first")]
    TooManyRows { rows: usize, cap: usize },

    #[error("cannot render an empty series")]
    EmptySeries,

    #[error("invalid chart config: {0}")]
    InvalidChart(String),

    #[error("malformed series data: {0}")]
    Series(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
