//! Edge-list parsing and named dataset access.

pub mod fetch;
pub mod manifest;
pub mod parse;

pub use fetch::{
    default_cache_dir, fetch_dataset, sha256_file, sha256_hex, DefaultTransport, Fetcher, Transport,
    CACHE_ENV,
};
pub use manifest::{list_datasets, DatasetEntry, DatasetManifest, ExpectedCounts, ReferenceIndices};
pub use parse::{
    read_edgelist, read_edgelist_from, read_edgelist_with, write_discretized, write_edgelist,
    EdgeListFormat, LoadOptions,
};
