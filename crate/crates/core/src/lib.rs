//! Temporal graph toolkit: load timestamped edge lists, discretize them into
//! snapshot sequences, compute per-snapshot and dataset-level statistics,
//! and render deterministic SVG charts.
//!
//! ```
//! use tempograph::{build_stream, discretize, stats, Granularity};
//!
//! let stream = build_stream([("a", "b", 1), ("b", "c", 2), ("a", "b", 5)]).unwrap();
//! let seq = discretize(&stream, Granularity::Bins(2)).unwrap();
//! let tea = stats::tea_series(&seq);
//! assert_eq!(tea.0[1].repeated_edges, 1);
//! ```

pub mod error;
pub mod exec;
pub mod graph;
pub mod ingest;
pub mod stats;
pub mod transform;
pub mod viz;

pub use error::{Error, Result};
pub use graph::{
    build_stream, EdgeEvent, EdgeKey, EdgeSet, EventStream, NodeId, Snapshot, SnapshotSequence,
    StreamBuilder, StreamMeta, TimeUnit, Timestamp,
};
pub use ingest::{
    fetch_dataset, list_datasets, read_edgelist, read_edgelist_with, DatasetManifest,
    EdgeListFormat, LoadOptions,
};
pub use stats::{summarize, StatsReport};
pub use transform::{
    chronological_split, discretize, sample_nodes, subsample, subsample_random, Granularity,
    SplitSpec,
};
